#pragma once

// Ledger export. JSON lines, one object per time:
//   {"n":9,"verdict":"crossed","crossers":[3]}
// or CSV with header `n,verdict,crossers`, crossers joined by '|'.

#include <iosfwd>

#include "dsieve/sieve_engine.hpp"

namespace dsieve {

enum class OutputFormat { Json, Csv };

enum class LedgerView {
    All,          // every time 1..limit
    CrossedOnly,  // only Crossed times
};

void write_ledger(std::ostream& out, const SieveLedger& ledger, OutputFormat format,
                  LedgerView view = LedgerView::All);

}  // namespace dsieve
