#include "dsieve/ledger_io.hpp"

#include <json.hpp>
#include <ostream>

namespace dsieve {

void write_ledger(std::ostream& out, const SieveLedger& ledger, OutputFormat format, LedgerView view) {
    if (format == OutputFormat::Csv) out << "n,verdict,crossers\n";

    for (std::uint64_t n = 1; n <= ledger.limit(); ++n) {
        const Verdict v = ledger.verdict(n);
        if (view == LedgerView::CrossedOnly && v != Verdict::Crossed) continue;
        const auto crossers = ledger.crossers(n);

        if (format == OutputFormat::Json) {
            nlohmann::ordered_json row;
            row["n"] = n;
            row["verdict"] = verdict_name(v);
            row["crossers"] = std::vector<std::uint64_t>(crossers.begin(), crossers.end());
            out << row.dump() << '\n';
        } else {
            out << n << ',' << verdict_name(v) << ',';
            for (std::size_t i = 0; i < crossers.size(); ++i) out << (i ? "|" : "") << crossers[i];
            out << '\n';
        }
    }
}

}  // namespace dsieve
