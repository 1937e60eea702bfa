#include "partrace/fixtures.hpp"

#include <fstream>
#include <regex>
#include <sstream>

#include <json.hpp>

#include "partrace/errors.hpp"

namespace partrace {

namespace {

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

nlohmann::json parse_json(const std::string& path) {
  try {
    return nlohmann::json::parse(slurp(path));
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(path + ": " + e.what());
  }
}

}  // namespace

CosetRep coset_rep_from_label(const std::string& label) {
  if (label == "inf") return {Cusp::Infinity, 0};
  static const std::regex re(R"(^(1/3|1/2|0),(\d)$)");
  std::smatch m;
  if (!std::regex_match(label, m, re)) throw ParseError("bad coset label '" + label + "'");
  const int k = std::stoi(m[2]);
  const std::string c = m[1];
  CosetRep rep{c == "1/3" ? Cusp::OneThird : c == "1/2" ? Cusp::OneHalf : Cusp::Zero, k};
  if (k >= rep.width()) throw ParseError("coset index out of range in '" + label + "'");
  return rep;
}

std::vector<CuspTableRow> load_cusp_tables(const std::string& path) {
  const nlohmann::json j = parse_json(path);
  std::vector<CuspTableRow> out;
  try {
    for (const char* key : {"even", "odd"}) {
      for (const auto& r : j.at(key)) {
        CuspTableRow row;
        row.parity = std::string(key) == "odd";
        row.a = r.at("a");
        row.b = r.at("b");
        row.c_mul = r.at("c_mul");
        row.c_add = r.at("c_add");
        row.c_div = r.at("c_div");
        row.rep = coset_rep_from_label(r.at("gamma"));
        row.width = r.at("h");
        row.zeta_exponent = r.at("zeta_exponent");
        row.phi_twelfths = r.at("phi_twelfths");
        out.push_back(row);
      }
    }
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(path + ": " + e.what());
  }
  return out;
}

std::vector<CosetRepRecord> load_coset_reps(const std::string& path) {
  const nlohmann::json j = parse_json(path);
  std::vector<CosetRepRecord> out;
  try {
    for (const auto& r : j.at("reps")) {
      const auto& m = r.at("matrix");
      if (m.size() != 4) throw ParseError(path + ": matrix must have four entries");
      CosetRepRecord rec;
      rec.label = r.at("label");
      rec.matrix = UnimodularMatrix(m[0], m[1], m[2], m[3]);
      rec.width = r.at("h");
      rec.zeta_exponent = r.at("zeta_exponent");
      out.push_back(rec);
    }
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(path + ": " + e.what());
  }
  return out;
}

std::map<std::int64_t, std::vector<mpz_class>> parse_coefficient_table(const std::string& text) {
  std::map<std::int64_t, std::vector<mpz_class>> out;
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  static const std::regex head(R"(^\s*(\d+)\s*:(.*)$)");
  static const std::regex num(R"(^\s*([+-]?\d+)\s*$)");
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    auto first = line.find_first_not_of(" \t");
    if (first == std::string::npos || line[first] == '#') continue;
    std::smatch m;
    if (!std::regex_match(line, m, head)) throw ParseError("coefficient table: expected 'n: c_h, ..., c_0' on line " + std::to_string(lineno));
    const std::int64_t n = std::stoll(m[1]);
    std::vector<mpz_class> coeffs;
    std::stringstream rest(m[2].str());
    std::string item;
    while (std::getline(rest, item, ',')) {
      std::smatch mm;
      if (!std::regex_match(item, mm, num)) throw ParseError("coefficient table: bad integer on line " + std::to_string(lineno));
      std::string s = mm[1];
      if (s.front() == '+') s.erase(0, 1);
      coeffs.emplace_back(s);
    }
    if (coeffs.empty()) throw ParseError("coefficient table: no coefficients on line " + std::to_string(lineno));
    if (out.count(n)) throw ParseError("coefficient table: duplicate n = " + std::to_string(n));
    out[n] = std::move(coeffs);
  }
  return out;
}

std::map<std::int64_t, std::vector<mpz_class>> load_coefficient_table(const std::string& path) {
  return parse_coefficient_table(slurp(path));
}

}  // namespace partrace
