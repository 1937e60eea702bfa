#include "doctest.h"

#include <algorithm>
#include <numeric>
#include <set>

#include "partrace/errors.hpp"
#include "partrace/qforms.hpp"
#include "support.hpp"

using namespace partrace;
using partrace::testing::agree;

namespace {

bool condition(const QuadForm& f, int beta) {
  return f.a % 6 == 0 && ((f.b - beta) % 12 + 12) % 12 == 0;
}

}  // namespace

TEST_CASE("discriminant") {
  CHECK(discriminant({2, -1, 3}) == -23);
  CHECK(discriminant({1, 0, 1}) == -4);
  for (std::int64_t n = 1; n <= 50; ++n) CHECK(discriminant({2, -1, 3 * n}) == 1 - 24 * n);
  CHECK_THROWS_AS(Discriminant::of(-5), InvalidArgument);
  CHECK_THROWS_AS(Discriminant::of(4), InvalidArgument);
  Discriminant d = Discriminant::of(-575);
  CHECK(d.t == 5);
  CHECK(d.d == -23);
  CHECK(Discriminant::for_partition(24).D == -575);
  CHECK(Discriminant::of(-12).d == -3);
}

TEST_CASE("reduce") {
  Reduction r = reduce({6, 1, 1});
  CHECK(r.form == QuadForm{1, 1, 6});
  CHECK(QuadForm{6, 1, 1}.compose(r.matrix.inverse()) == r.form);

  Reduction id = reduce({1, 1, 6});
  CHECK(id.form == QuadForm{1, 1, 6});
  CHECK(id.matrix.projectively_equal(UnimodularMatrix::identity()));

  // Q(x - y, y) = 2x^2 - xy + 3y^2; [2,1,3] is the inverse class
  Reduction r2 = reduce({2, 3, 4});
  CHECK(r2.form == QuadForm{2, -1, 3});
  CHECK(QuadForm{2, 3, 4}.compose(UnimodularMatrix::T(-1)) == QuadForm{2, -1, 3});
  CHECK(QuadForm{2, 3, 4}.compose(r2.matrix.inverse()) == r2.form);

  // boundary conventions
  CHECK(reduce({2, -2, 3}).form == QuadForm{2, 2, 3});
  CHECK(reduce({3, -1, 3}).form == QuadForm{3, 1, 3});
}

TEST_CASE("reduce sends the CM point into the fundamental domain") {
  const mpfr_prec_t prec = 128;
  for (QuadForm q : {QuadForm{6, 1, 1}, QuadForm{2, 3, 4}, QuadForm{37, 25, 5}, QuadForm{12, 13, 4}}) {
    Reduction r = reduce(q);
    BigComplex moved = r.matrix.apply(cm_point(q, prec));
    CHECK(agree(moved, cm_point(r.form, prec), 1e-30));
  }
}

TEST_CASE("enumerate_primitive_reduced") {
  CHECK(enumerate_primitive_reduced(Discriminant::of(-23)) ==
        std::vector<QuadForm>{{1, 1, 6}, {2, -1, 3}, {2, 1, 3}});
  CHECK(enumerate_primitive_reduced(Discriminant::of(-3)) == std::vector<QuadForm>{{1, 1, 1}});
  CHECK(enumerate_primitive_reduced(Discriminant::of(-4)) == std::vector<QuadForm>{{1, 0, 1}});
}

TEST_CASE("class_number") {
  CHECK(class_number(-23) == 3);
  CHECK(class_number(-3) == 1);
  CHECK(class_number(-575) == 18);
  CHECK(class_number(-47) == 5);
  CHECK(class_number(-4) == 1);
  CHECK(class_number(-71) == 7);
}

TEST_CASE("coset_assign examples") {
  CHECK(coset_assign({2, -1, 3}).rep == CosetRep{Cusp::Zero, 3});
  CHECK(coset_assign({2, -1, 6}).rep == CosetRep{Cusp::Zero, 0});
  CosetAssignment a = coset_assign({1, 1, 6});
  CHECK(condition(a.form, 1));
  int hits = 0;
  for (const CosetRep& rep : CosetRep::all())
    if (condition(QuadForm{1, 1, 6}.compose(rep.matrix().inverse()), 1)) ++hits;
  CHECK(hits == 1);
}

TEST_CASE("coset representatives") {
  const auto& reps = CosetRep::all();
  CHECK(reps.size() == 12);
  // each cusp carries as many representatives as its width
  for (Cusp c : {Cusp::Infinity, Cusp::OneThird, Cusp::OneHalf, Cusp::Zero}) {
    int count = 0, width = 0;
    for (const auto& r : reps)
      if (r.cusp == c) {
        ++count;
        width = r.width();
      }
    CHECK(count == width);
  }
  // pairwise distinct right cosets of Gamma_0(6)
  for (std::size_t i = 0; i < reps.size(); ++i)
    for (std::size_t k = i + 1; k < reps.size(); ++k) {
      UnimodularMatrix g = reps[i].matrix() * reps[k].matrix().inverse();
      CHECK(g.r % 6 != 0);
    }
}

TEST_CASE("reduced form invariants for n <= 200") {
  for (std::int64_t n = 1; n <= 200; ++n) {
    Discriminant disc = Discriminant::for_partition(n);
    auto forms = enumerate_primitive_reduced(disc);
    CHECK(static_cast<std::int64_t>(forms.size()) == class_number(disc));
    for (const QuadForm& q : forms) {
      CHECK(std::abs(q.b) <= q.a);
      CHECK(q.a <= q.c);
      CHECK(q.is_primitive());
      CHECK(q.discriminant() == disc.D);
      CHECK(q.is_reduced());
      CHECK(reduce(q).form == q);

      int hits = 0;
      for (const CosetRep& rep : CosetRep::all())
        if (condition(q.compose(rep.matrix().inverse()), 1)) ++hits;
      CHECK(hits == 1);
      CosetAssignment a = coset_assign(q);
      CHECK(condition(a.form, 1));
      CHECK(a.form == q.compose(a.rep.matrix().inverse()));

      CuspData cd = cusp_invariants(q, n);
      CHECK((q.a * cd.width) % 6 == 0);
    }
  }
}

TEST_CASE("gamma06_representatives") {
  auto reps = gamma06_representatives(Discriminant::of(-23));
  CHECK(reps.size() == 3);
  CHECK(std::any_of(reps.begin(), reps.end(), [](const HeegnerRep& r) { return r.form == QuadForm{6, 1, 1}; }));
  CHECK(gamma06_representatives(Discriminant::of(-47)).size() == 5);
  for (std::int64_t n = 1; n <= 60; ++n) {
    Discriminant disc = Discriminant::for_partition(n);
    auto rs = gamma06_representatives(disc);
    CHECK(static_cast<std::int64_t>(rs.size()) == class_number(disc));
    for (const auto& r : rs) {
      CHECK(condition(r.form, 1));
      CHECK(std::gcd(r.form.c, std::int64_t{6}) == 1);
      CHECK(r.form.discriminant() == disc.D);
      CHECK(reduce(r.form).form == r.reduced);
    }
  }
}

TEST_CASE("n_system") {
  Discriminant d23 = Discriminant::of(-23);
  std::vector<QuadForm> pd;
  for (const auto& r : gamma06_representatives(d23)) pd.push_back(r.form);
  CHECK(is_n_system(pd, d23, 6));

  CHECK(n_system(Discriminant::of(-3), 1) == std::vector<QuadForm>{{1, 1, 1}});

  auto s47 = n_system(Discriminant::of(-47), 6);
  CHECK(s47.size() == 5);
  for (const auto& q : s47) {
    CHECK(std::gcd(q.c, std::int64_t{6}) == 1);
    CHECK(((q.b - s47.front().b) % 6 + 6) % 6 == 0);
  }

  for (std::int64_t n = 1; n <= 80; ++n) {
    Discriminant disc = Discriminant::for_partition(n);
    for (std::int64_t N : {2, 6, 12}) {
      auto sys = n_system(disc, N);
      CHECK(static_cast<std::int64_t>(sys.size()) == class_number(disc));
      CHECK(is_n_system(sys, disc, N));
      std::set<QuadForm> classes;
      for (const auto& q : sys) {
        CHECK(std::gcd(q.c, N) == 1);
        CHECK(((q.b - sys.front().b) % N + N) % N == 0);
        classes.insert(reduce(q).form);
      }
      CHECK(classes.size() == sys.size());
    }
  }
}

TEST_CASE("cm_point") {
  const mpfr_prec_t prec = 192;
  CHECK(agree(cm_point({1, 0, 1}, prec), BigComplex::i(prec), 1e-50));
  Real s23 = sqrt(Real(23, prec));
  CHECK(agree(cm_point({2, -1, 3}, prec), BigComplex(Real(mpq_class(1, 4), prec), s23 / 4), 1e-50));
  CHECK(agree(cm_point({6, 1, 1}, prec), BigComplex(Real(mpq_class(-1, 12), prec), s23 / 12), 1e-50));

  for (std::int64_t n = 1; n <= 40; ++n) {
    for (const QuadForm& q : enumerate_primitive_reduced(Discriminant::for_partition(n))) {
      BigComplex t = cm_point(q, prec);
      BigComplex value = t * t * static_cast<long>(q.a) + t * static_cast<long>(q.b) + BigComplex(static_cast<long>(q.c), prec);
      CHECK(value.contains_zero());
    }
  }
}

TEST_CASE("cusp_invariants table examples") {
  CuspData even = cusp_invariants({12, 1, 5}, 10);
  CHECK(even.width == 1);
  CHECK(even.zeta_exponent == 0);
  CHECK(even.phi_over_pi() == mpq_class(1, 12));

  CuspData odd = cusp_invariants({4, -3, 8}, 5);
  CHECK(odd.width == 3);
  CHECK(((odd.zeta_exponent % 6) + 6) % 6 == 5);
  CHECK(odd.phi_over_pi() == mpq_class(-7, 12));

  CuspData e2 = cusp_invariants({2, -1, 30}, 10);
  CHECK(e2.width == 6);
  CHECK(e2.zeta_exponent == 0);
  CHECK(e2.phi_over_pi() == mpq_class(-1, 12));
}
