#pragma once

// Independent ways of computing p(n), used as ground truth.

#include <cstdint>
#include <vector>

#include <gmpxx.h>

#include "partrace/numeric/complex.hpp"
#include "partrace/numeric/context.hpp"

namespace partrace {

struct PartitionTable {
  std::vector<mpz_class> values;  // p(0), ..., p(N)

  const mpz_class& operator[](std::size_t n) const { return values.at(n); }
  std::size_t size() const { return values.size(); }
};

// Pentagonal-number recursion.
PartitionTable euler_p(std::int64_t N);

// p(n) by exhaustive enumeration; only for small n.
mpz_class brute_force_p(int n);

struct RademacherResult {
  mpz_class value;
  double residual = 1;  // distance of the truncated sum to the nearest integer
  BigComplex sum;
};

// A_k(n) = sum_{h mod k, (h,k)=1} exp(pi i s(h,k) - 2 pi i n h / k).
BigComplex rademacher_A(std::int64_t k, std::int64_t n, const EvalContext& ctx);
// Default truncation ceil(2 sqrt n) + 5.
std::int64_t rademacher_terms(std::int64_t n);
// Throws PrecisionExhausted if the residual exceeds 0.25.
RademacherResult rademacher_p(std::int64_t n, std::int64_t K, const EvalContext& ctx);

// exp(pi sqrt(2n/3)) / (4 n sqrt 3).
BigComplex hardy_ramanujan_asymptotic(std::int64_t n, const EvalContext& ctx);

}  // namespace partrace
