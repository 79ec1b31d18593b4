#include <cmath>
#include <random>
#include <vector>

#include <catch2/catch_amalgamated.hpp>

#include "newsort/fixtures.hpp"
#include "newsort/regression.hpp"

using namespace newsort;

namespace {

// independent check: normal equations solved in long double by Gaussian
// elimination with partial pivoting, raw power basis
std::vector<double> normal_equations_fit(const std::vector<double>& xs,
                                         const std::vector<double>& ys, int degree) {
  const std::size_t m = static_cast<std::size_t>(degree) + 1;
  std::vector<long double> ata(m * m, 0.0L), atb(m, 0.0L);
  for (std::size_t r = 0; r < xs.size(); ++r) {
    std::vector<long double> row(m);
    long double p = 1.0L;
    for (std::size_t c = 0; c < m; ++c) {
      row[c] = p;
      p *= xs[r];
    }
    for (std::size_t i = 0; i < m; ++i) {
      for (std::size_t j = 0; j < m; ++j) ata[i * m + j] += row[i] * row[j];
      atb[i] += row[i] * ys[r];
    }
  }
  for (std::size_t col = 0; col < m; ++col) {
    std::size_t pivot = col;
    for (std::size_t r = col + 1; r < m; ++r) {
      if (std::abs(static_cast<double>(ata[r * m + col])) >
          std::abs(static_cast<double>(ata[pivot * m + col]))) {
        pivot = r;
      }
    }
    for (std::size_t c = 0; c < m; ++c) std::swap(ata[col * m + c], ata[pivot * m + c]);
    std::swap(atb[col], atb[pivot]);
    for (std::size_t r = col + 1; r < m; ++r) {
      const long double factor = ata[r * m + col] / ata[col * m + col];
      for (std::size_t c = col; c < m; ++c) ata[r * m + c] -= factor * ata[col * m + c];
      atb[r] -= factor * atb[col];
    }
  }
  std::vector<double> coef(m);
  for (std::size_t col = m; col-- > 0;) {
    long double acc = atb[col];
    for (std::size_t c = col + 1; c < m; ++c) acc -= ata[col * m + c] * coef[c];
    coef[col] = static_cast<double>(acc / ata[col * m + col]);
  }
  return coef;
}

double sum_sq_residuals(const std::vector<double>& xs, const std::vector<double>& ys,
                        const std::vector<double>& coef) {
  double ss = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    const double r = ys[i] - predict(std::span<const double>(coef), xs[i]);
    ss += r * r;
  }
  return ss;
}

}  // namespace

TEST_CASE("exact members of the model family fit with r_squared 1") {
  const std::vector<double> xs{1, 2, 3, 4, 5, 6, 7};
  std::vector<double> ys;
  for (double x : xs) ys.push_back(2.0 - 3.0 * x + 0.5 * x * x);
  const PolyFit fit = polyfit(xs, ys, 2);
  CHECK(fit.r_squared == Catch::Approx(1.0).margin(1e-12));
  CHECK(fit.ss_res < 1e-9);
  CHECK(fit.coefficients.size() == 3);
  CHECK(fit.coefficients[2] == Catch::Approx(0.5).margin(1e-9));
}

TEST_CASE("predict is Horner over ascending coefficients") {
  CHECK(predict(std::span<const double>(std::vector<double>{}), 3.0) == 0.0);

  const std::vector<double> xs{0, 1, 2, 3};
  const std::vector<double> ys{0, 1, 2, 3};
  const PolyFit line = polyfit(xs, ys, 1);
  CHECK(predict(line, 2.5) == Catch::Approx(2.5).margin(1e-9));

  // internal consistency: ss_res recomputed from predict matches the stored value
  const auto& t3 = published_table(3);
  const PolyFit fit = polyfit(t3.grid, t3.printed_means, 4);
  double ss = 0.0;
  for (std::size_t i = 0; i < t3.grid.size(); ++i) {
    const double r = t3.printed_means[i] - predict(fit, t3.grid[i]);
    ss += r * r;
  }
  CHECK(ss == Catch::Approx(fit.ss_res).epsilon(1e-9));
}

TEST_CASE("published R^2 values recompute from the fixtures") {
  struct Case {
    int table;
    int degree;
    double published;
    double tolerance;
  };
  for (const auto& c : {Case{1, 4, 0.9953, 0.02}, Case{2, 2, 0.9783, 0.02},
                        Case{3, 4, 0.9065, 0.03}, Case{4, 4, 0.9927, 0.02},
                        Case{5, 3, 0.9066, 0.03}}) {
    const auto& table = published_table(c.table);
    const PolyFit fit = polyfit(table.grid, table.printed_means, c.degree);
    INFO("table " << c.table << " degree " << c.degree << " R^2 " << fit.r_squared);
    CHECK(std::abs(fit.r_squared - c.published) <= c.tolerance);
  }
}

TEST_CASE("polyfit rejects bad inputs") {
  const std::vector<double> xs{1, 2, 3};
  CHECK_THROWS_AS(polyfit(xs, {1, 2}, 1), FitError);                  // length mismatch
  CHECK_THROWS_AS(polyfit(xs, {1, 2, 3}, 3), FitError);               // too few points
  CHECK_THROWS_AS(polyfit(xs, {1, 2, 3}, 0), FitError);               // degree floor
  CHECK_THROWS_AS(polyfit(xs, {1, 2, 3}, 7), FitError);               // degree ceiling
  CHECK_THROWS_AS(polyfit({1, 2, 2}, {1, 2, 3}, 1), FitError);        // duplicate xs
  CHECK_THROWS_WITH(polyfit(xs, {4, 4, 4}, 1), Catch::Matchers::ContainsSubstring("zero variance"));
}

TEST_CASE("select_degree prefers the smallest adequate degree") {
  std::vector<double> xs, line, cubic;
  for (int i = 0; i <= 9; ++i) {
    const double x = static_cast<double>(i);
    xs.push_back(x);
    line.push_back(4.0 - 0.5 * x);
    cubic.push_back(1.0 + x - 0.2 * x * x + 0.05 * x * x * x);
  }
  CHECK(select_degree(xs, line, 4).first == 1);
  CHECK(select_degree(xs, cubic, 4).first == 3);

  // published choice for table 2 was degree 2; the automatic pick must do at
  // least as well on adjusted R^2, within the parsimony window
  const auto& t2 = published_table(2);
  const auto [degree, fit] = select_degree(t2.grid, t2.printed_means, 4);
  const PolyFit quadratic = polyfit(t2.grid, t2.printed_means, 2);
  CHECK(degree <= 4);
  CHECK(fit.adjusted_r_squared() >= quadratic.adjusted_r_squared() - 0.005);
}

TEST_CASE("dependence verdicts") {
  const auto& t1 = published_table(1);
  const auto dependent = dependence_verdict(t1.grid, t1.printed_means, 4);
  CHECK(dependent.dependent);
  CHECK(dependent.r_squared >= 0.97);

  const std::vector<double> xs{1, 2, 3, 4, 5};
  const auto flat = dependence_verdict(xs, {2, 2, 2, 2, 2}, 4);
  CHECK_FALSE(flat.dependent);
  CHECK(flat.degree == 0);

  // brute-force confirmation that the normal-family tables carry no pattern
  for (int id : {6, 7}) {
    const auto& table = published_table(id);
    for (int d = 1; d <= 4; ++d) {
      REQUIRE(polyfit(table.grid, table.printed_means, d).r_squared < 0.8);
    }
    CHECK_FALSE(dependence_verdict(table.grid, table.printed_means, 4).dependent);
  }
}

TEST_CASE("r_squared is invariant under affine maps of either axis") {
  const auto& table = published_table(5);
  const PolyFit base = polyfit(table.grid, table.printed_means, 3);

  std::vector<double> ys_affine, xs_affine;
  for (double y : table.printed_means) ys_affine.push_back(-2.5 * y + 7.0);
  for (double x : table.grid) xs_affine.push_back(0.25 * x - 3.0);

  CHECK(polyfit(table.grid, ys_affine, 3).r_squared == Catch::Approx(base.r_squared).margin(1e-9));
  CHECK(polyfit(xs_affine, table.printed_means, 3).r_squared ==
        Catch::Approx(base.r_squared).margin(1e-9));
}

TEST_CASE("r_squared grows with nested degrees and interpolates at d = n-1") {
  const auto& table = published_table(4);
  double previous = -1.0;
  for (int d = 1; d <= 6; ++d) {
    const double r2 = polyfit(table.grid, table.printed_means, d).r_squared;
    REQUIRE(r2 >= previous - 1e-12);
    previous = r2;
  }

  std::mt19937 gen(99);
  std::uniform_real_distribution<double> unit(0.0, 10.0);
  for (int round = 0; round < 20; ++round) {
    const std::size_t n = 3 + gen() % 5;  // degree = n-1 in 2..6
    std::vector<double> xs, ys;
    while (xs.size() < n) {
      const double x = unit(gen);
      bool fresh = true;
      for (double seen : xs) fresh = fresh && std::abs(seen - x) > 1e-6;
      if (fresh) {
        xs.push_back(x);
        ys.push_back(unit(gen));
      }
    }
    const PolyFit fit = polyfit(xs, ys, static_cast<int>(n) - 1);
    REQUIRE(fit.r_squared == Catch::Approx(1.0).margin(1e-9));
  }
}

TEST_CASE("solver agrees with a long-double normal-equations oracle") {
  std::mt19937 gen(123);
  std::uniform_real_distribution<double> unit(-5.0, 5.0);
  for (int round = 0; round < 30; ++round) {
    const int degree = 1 + static_cast<int>(gen() % 4);
    const std::size_t n = static_cast<std::size_t>(degree) + 2 + gen() % 5;  // <= 10
    std::vector<double> xs, ys;
    while (xs.size() < n) {
      const double x = unit(gen);
      bool fresh = true;
      for (double seen : xs) fresh = fresh && std::abs(seen - x) > 1e-3;
      if (fresh) {
        xs.push_back(x);
        ys.push_back(unit(gen));
      }
    }
    const PolyFit fit = polyfit(xs, ys, degree);
    const auto reference = normal_equations_fit(xs, ys, degree);
    const double ss_fit = sum_sq_residuals(xs, ys, fit.coefficients);
    const double ss_ref = sum_sq_residuals(xs, ys, reference);
    // both minimize the same objective; residuals must agree tightly
    REQUIRE(ss_fit <= ss_ref * (1.0 + 1e-8) + 1e-12);
    REQUIRE(ss_ref <= ss_fit * (1.0 + 1e-8) + 1e-12);
  }
}

TEST_CASE("spearman rank correlation") {
  const std::vector<double> xs{1, 2, 3, 4, 5};
  CHECK(spearman_rho(xs, {10, 20, 30, 40, 50}) == Catch::Approx(1.0));
  CHECK(spearman_rho(xs, {9, 7, 5, 3, 1}) == Catch::Approx(-1.0));
  // monotone but nonlinear is still rho = 1
  CHECK(spearman_rho(xs, {1, 8, 27, 64, 125}) == Catch::Approx(1.0));
  // ties get averaged ranks: ranks 1.5,1.5,3.5,3.5,5 give 9/sqrt(90)
  CHECK(spearman_rho(xs, {1, 1, 2, 2, 3}) == Catch::Approx(0.9486833).margin(1e-6));
  CHECK(spearman_rho(xs, {4, 4, 4, 4, 4}) == 0.0);
}
