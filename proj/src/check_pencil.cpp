#include "frobenius/errors.hpp"
#include "frobenius/pencil.hpp"

namespace frob {

const CheckResult* PencilReport::find(const std::string& name) const {
  for (const auto& c : checks)
    if (c.name == name) return &c;
  return nullptr;
}

std::vector<GradedPoly> symbolic_curvature(const PolyMatrix& g, const Christoffel& gamma) {
  int n = gamma.deg.n;
  const Ring& ring = gamma.at(0, 0, 0).ring();
  auto N = static_cast<size_t>(n);
  std::vector<GradedPoly> dgam;  // ∂_d Γ^{ab}_c at ((a·n + b)·n + c)·n + d
  dgam.reserve(N * N * N * N);
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      for (int c = 0; c < n; ++c)
        for (int d = 0; d < n; ++d) dgam.push_back(derive(gamma.at(a, b, c), d));
  auto dG = [&](int a, int b, int c, int d) -> const GradedPoly& {
    return dgam[static_cast<size_t>(((a * n + b) * n + c) * n + d)];
  };
  std::vector<GradedPoly> out;
  // R^{lab}_d = g^{ls}(∂_s Γ^{ab}_d − ∂_d Γ^{ab}_s) − Γ^{la}_s Γ^{sb}_d + Γ^{lb}_s Γ^{sa}_d
  for (int l = 0; l < n; ++l)
    for (int a = 0; a < n; ++a)
      for (int b = 0; b < n; ++b)
        for (int d = 0; d < n; ++d) {
          GradedPoly acc(ring);
          for (int s = 0; s < n; ++s) {
            const GradedPoly& gls = g[static_cast<size_t>(l)][static_cast<size_t>(s)];
            if (!gls.is_zero()) acc = acc + gls * (dG(a, b, d, s) - dG(a, b, s, d));
            acc = acc - gamma.at(l, a, s) * gamma.at(s, b, d) + gamma.at(l, b, s) * gamma.at(s, a, d);
          }
          out.push_back(std::move(acc));
        }
  return out;
}

namespace {

GradedPoly zero_of(const Ring& r) { return GradedPoly(r); }

void check_zero(CheckResult& chk, const GradedPoly& p, std::vector<int> idx) {
  if (!p.is_zero()) chk.fail({std::move(idx), p, {}});
}

std::string pt_str(const std::vector<Fraction>& pt) {
  std::string s = "(";
  for (size_t i = 0; i < pt.size(); ++i) s += (i ? ", " : "") + pt[i].str();
  return s + ")";
}

}  // namespace

PencilReport check_pencil(const IntersectionForm& g, const ConstMetric& eta, const Christoffel& gamma,
                          const PencilOptions& opt) {
  const DegreeVector& deg = g.deg;
  int n = deg.n;
  const Ring& ring = g.ring;
  if (eta.n != n || gamma.deg.n != n) throw ShapeError("check_pencil: shape mismatch");
  PencilReport rep;

  {
    CheckResult c("a_second_derivative");
    for (int a = 0; a < n; ++a)
      for (int b = a; b < n; ++b) check_zero(c, derive(derive(g.at(a, b), 0), 0), one_based({a, b}));
    for (int a = 0; a < n; ++a)
      for (int b = 0; b < n; ++b)
        for (int k = 0; k < n; ++k) check_zero(c, derive(derive(gamma.at(a, b, k), 0), 0), one_based({a, b, k}));
    rep.checks.push_back(std::move(c));
  }
  {
    CheckResult c("b_unit_derivative");
    for (int a = 0; a < n; ++a)
      for (int b = a; b < n; ++b)
        check_zero(c, derive(g.at(a, b), 0) - GradedPoly::constant(ring, eta.upper[a][b]), one_based({a, b}));
    rep.checks.push_back(std::move(c));
  }
  {
    CheckResult c("b_determinant_unit");
    PolyMatrix d1 = g.g;
    for (auto& row : d1)
      for (auto& p : row) p = derive(p, 0);
    GradedPoly det = determinant(d1);
    if (!det.is_constant() || det.is_zero() || !det.coeff(Exp(static_cast<size_t>(n), 0)).is_unit())
      c.fail({{}, det, "det(∂₁g) is not a constant unit"});
    else
      c.detail = "det = " + det.coeff(Exp(static_cast<size_t>(n), 0)).str();
    rep.checks.push_back(std::move(c));
  }
  {
    CheckResult c("degree_law");
    for (int a = 0; a < n; ++a)
      for (int b = 0; b < n; ++b) {
        if (!is_homogeneous(g.at(a, b), metric_degree(deg, a, b), deg)) c.fail({one_based({a, b}), g.at(a, b), "g"});
        for (int k = 0; k < n; ++k)
          if (!is_homogeneous(gamma.at(a, b, k), connection_degree(deg, a, b, k), deg))
            c.fail({one_based({a, b, k}), gamma.at(a, b, k), "Γ"});
      }
    rep.checks.push_back(std::move(c));
  }
  {
    CheckResult c("metric_compatibility");
    for (int a = 0; a < n; ++a)
      for (int b = 0; b < n; ++b)
        for (int k = 0; k < n; ++k)
          check_zero(c, gamma.at(a, b, k) + gamma.at(b, a, k) - derive(g.at(a, b), k), one_based({a, b, k}));
    rep.checks.push_back(std::move(c));
  }
  {
    CheckResult c("c_torsion");
    for (int a = 0; a < n; ++a)
      for (int b = a + 1; b < n; ++b)
        for (int k = 0; k < n; ++k) {
          GradedPoly r = zero_of(ring);
          for (int s = 0; s < n; ++s) r = r + g.at(a, s) * gamma.at(b, k, s) - g.at(b, s) * gamma.at(a, k, s);
          check_zero(c, r, one_based({a, b, k}));
        }
    rep.checks.push_back(std::move(c));
  }
  {
    CheckResult c("d_quadratic");
    for (int a = 0; a < n; ++a)
      for (int b = 0; b < n; ++b)
        for (int d = b + 1; d < n; ++d)
          for (int m = 0; m < n; ++m) {
            GradedPoly r = zero_of(ring);
            for (int k = 0; k < n; ++k) r = r + gamma.at(a, b, k) * gamma.at(k, d, m) - gamma.at(a, d, k) * gamma.at(k, b, m);
            check_zero(c, r, one_based({a, b, d, m}));
          }
    rep.checks.push_back(std::move(c));
  }
  {
    CheckResult c("e_elliptic_rows");
    if (deg.mode != Mode::Elliptic) {
      c.skip("not elliptic mode");
    } else {
      int last = n - 1;
      const Fraction& e1n = eta.upper[0][static_cast<size_t>(last)];
      for (int a = 0; a < n; ++a) {
        GradedPoly expect = GradedPoly::variable(ring, a).scaled(e1n * deg.d[static_cast<size_t>(a)]);
        check_zero(c, g.at(last, a) - expect, one_based({last, a}));
        for (int b = 0; b < n; ++b) {
          check_zero(c, gamma.at(a, last, b), one_based({a, last, b}));
          Fraction want = a == b ? e1n * deg.d[static_cast<size_t>(a)] : Fraction(0);
          check_zero(c, gamma.at(last, a, b) - GradedPoly::constant(ring, want), one_based({last, a, b}));
        }
      }
    }
    rep.checks.push_back(std::move(c));
  }

  CheckResult oracle("oracle_agreement");
  CheckResult curv("f_curvature");
  std::vector<std::vector<Fraction>> pts;
  try {
    pts = sample_points(g, eta, opt.lambdas, opt.points, opt.seed);
  } catch (const DomainError& e) {
    oracle.fail({{}, {}, e.what()});
    curv.fail({{}, {}, e.what()});
  }
  rep.points_used = static_cast<int>(pts.size());
  if (!pts.empty()) {
    std::vector<PointOracle> oracles;
    for (const auto& l : opt.lambdas) oracles.emplace_back(g.shifted(eta, l));
    PointOracle base(g);
    auto N = static_cast<size_t>(n);
    for (size_t p = 0; p < pts.size(); ++p) {
      const auto& pt = pts[p];
      auto og = base.christoffel(pt);
      for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b)
          for (int k = 0; k < n; ++k) {
            CoeffElem diff = og[(a * N + b) * N + k] - evaluate_coeff(gamma.at(a, b, k), pt);
            if (!diff.is_zero())
              oracle.fail({one_based({a, b, k}), {}, "point " + std::to_string(p) + " " + pt_str(pt) + ": " + diff.str()});
          }
      for (size_t li = 0; li < oracles.size(); ++li) {
        auto R = oracles[li].riemann(pt);
        for (size_t i = 0; i < R.size(); ++i)
          if (!R[i].is_zero()) {
            int v = static_cast<int>(i % N), m = static_cast<int>((i / N) % N), s = static_cast<int>((i / N / N) % N),
                r = static_cast<int>(i / N / N / N);
            curv.fail({one_based({r, s, m, v}), {},
                       "λ = " + opt.lambdas[li].str() + ", point " + std::to_string(p) + ": " + R[i].str()});
          }
        // pencil linearity: the connection of g + λη equals that of g in η-flat coordinates
        auto gl = oracles[li].christoffel(pt);
        for (size_t i = 0; i < gl.size(); ++i)
          if (!(gl[i] - og[i]).is_zero())
            curv.fail({{}, {}, "λ = " + opt.lambdas[li].str() + ", point " + std::to_string(p) + ": Γ not affine in λ"});
      }
    }
    std::string d = std::to_string(pts.size()) + " points, " + std::to_string(opt.lambdas.size()) + " λ samples";
    oracle.detail = std::to_string(pts.size()) + " points";
    curv.detail = d;
  }
  rep.checks.push_back(std::move(curv));
  rep.checks.push_back(std::move(oracle));

  {
    CheckResult c("g_potential_symmetry");
    for (int e = 0; e < n; ++e)
      for (int k = e + 1; k < n; ++k)
        for (int b = 0; b < n; ++b) {
          GradedPoly r = zero_of(ring);
          for (int a = 0; a < n; ++a) {
            r = r + gamma.at(a, b, k).scaled(eta.lower[e][a]);
            r = r - gamma.at(a, b, e).scaled(eta.lower[k][a]);
          }
          check_zero(c, r, one_based({e, b, k}));
        }
    rep.checks.push_back(std::move(c));
  }
  {
    CheckResult c("symbolic_curvature");
    if (!opt.symbolic_curvature) {
      c.skip("not requested");
    } else if (n > 3) {
      c.skip("n > 3");
    } else {
      auto R = symbolic_curvature(g.g, gamma);
      auto Reta = symbolic_curvature(constant_matrix(ring, eta.upper), gamma);
      PolyMatrix zero(static_cast<size_t>(n), std::vector<GradedPoly>(static_cast<size_t>(n), GradedPoly(ring)));
      auto quad = symbolic_curvature(zero, gamma);  // Γ·Γ part, shared by both
      auto N = static_cast<size_t>(n);
      for (size_t i = 0; i < R.size(); ++i) {
        int d = static_cast<int>(i % N), b = static_cast<int>((i / N) % N), a = static_cast<int>((i / N / N) % N),
            l = static_cast<int>(i / N / N / N);
        check_zero(c, R[i], one_based({l, a, b, d}));
        check_zero(c, Reta[i] - quad[i], one_based({l, a, b, d}));
      }
      // torsion of g + λη needs η^{as}Γ^{bk}_s symmetric in (a, b)
      for (int a = 0; a < n; ++a)
        for (int b = a + 1; b < n; ++b)
          for (int k = 0; k < n; ++k) {
            GradedPoly r = zero_of(ring);
            for (int s = 0; s < n; ++s)
              r = r + gamma.at(b, k, s).scaled(eta.upper[a][s]) - gamma.at(a, k, s).scaled(eta.upper[b][s]);
            check_zero(c, r, one_based({a, b, k}));
          }
      if (!c.failed()) c.detail = "R(g) = 0 and the λ-linear part vanishes identically";
    }
    rep.checks.push_back(std::move(c));
  }
  return rep;
}

}  // namespace frob
