#pragma once

#include <filesystem>
#include <istream>
#include <ostream>
#include <string>

#include "gtcorr/estimate.h"

namespace gtcorr {

// Dataset CSV: header x_algo,y_algo,x_marked,y_marked[,x_real,y_real] (any
// column order), decimal reals in meters, blank lines and '#' comments
// skipped. Throws ParseError naming the line on any malformed input.
Dataset parse_dataset_csv(std::istream& in);
Dataset ingest_csv(const std::filesystem::path& path);

// Writes the same format with 17 significant digits, so re-reading is exact.
void write_dataset_csv(std::ostream& out, const Dataset& d);

// Decimal real in the style accepted above; rejects NaN, inf and trailing junk.
double parse_real(const std::string& text);

}  // namespace gtcorr
