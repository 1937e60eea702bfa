#pragma once

// Readers for the data files shipped in data/ and for external coefficient
// tables used by the crosscheck command.

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include <gmpxx.h>

#include "partrace/bounds.hpp"
#include "partrace/qforms.hpp"

namespace partrace {

// "inf", "1/3,r", "1/2,s" or "0,t". Throws ParseError.
CosetRep coset_rep_from_label(const std::string& label);

// data/cusp_tables.json. Throws ParseError.
std::vector<CuspTableRow> load_cusp_tables(const std::string& path);

struct CosetRepRecord {
  std::string label;
  UnimodularMatrix matrix;
  int width = 1;
  int zeta_exponent = 0;
};
// data/coset_reps.json. Throws ParseError.
std::vector<CosetRepRecord> load_coset_reps(const std::string& path);

// One polynomial per line, "n: c_h, ..., c_0" in decimal (leading coefficient
// first); blank lines and lines starting with '#' are skipped. Throws ParseError.
std::map<std::int64_t, std::vector<mpz_class>> parse_coefficient_table(const std::string& text);
std::map<std::int64_t, std::vector<mpz_class>> load_coefficient_table(const std::string& path);

}  // namespace partrace
