#include "cli.hpp"

#include <chrono>
#include <cmath>
#include <complex>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <random>

#include "CLI11.hpp"
#include "bdq/algebroid.hpp"
#include "bdq/bergman.hpp"
#include "bdq/connection.hpp"
#include "bdq/errors.hpp"
#include "bdq/fedosov.hpp"
#include "bdq/json.hpp"
#include "bdq/normal_form.hpp"

namespace bdq::cli {

using nlohmann::json;

namespace {

const char* verdict(bool ok) { return ok ? "pass" : "fail"; }

cr::ChartKind chart_kind(const RunConfig& c) {
  return c.chart == "interior" ? cr::ChartKind::interior : cr::ChartKind::boundary;
}

cr::Domain make_domain(const RunConfig& c) {
  if (c.domain == "disc") return cr::ball(0);
  if (c.domain == "custom") return cr::custom_domain(c.n, c.psi);
  return cr::ball(c.n);
}

// Roots of psi along seeded rays from the origin must have nonzero dbar psi.
void check_custom_psi(const cr::Domain& d, std::uint64_t seed) {
  int m = d.n + 1;
  RatFunc psi(d.psi);
  std::vector<RatFunc> grad;
  for (int j = 0; j < m; ++j) grad.push_back(psi.derivative(d.zb(j)));
  auto at = [&](const RatFunc& f, const std::vector<std::complex<double>>& z) {
    std::vector<std::complex<double>> p(z);
    for (const auto& x : z) p.push_back(std::conj(x));
    return f.evaluate_complex(p);
  };
  std::vector<std::complex<double>> origin(std::size_t(m), 0.0);
  if (at(psi, origin).real() <= 0) throw Error("invalid_psi", "psi must be positive at the origin");
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal;
  int found = 0;
  for (int ray = 0; ray < 32; ++ray) {
    std::vector<std::complex<double>> v(static_cast<std::size_t>(m));
    double norm = 0;
    for (auto& x : v) {
      x = {normal(rng), normal(rng)};
      norm += std::norm(x);
    }
    for (auto& x : v) x /= std::sqrt(norm);
    auto value = [&](double t) {
      std::vector<std::complex<double>> z(v);
      for (auto& x : z) x *= t;
      return at(psi, z).real();
    };
    double lo = 0, hi = 0;
    for (double t = 0.01; t <= 100; t *= 1.05)
      if (value(t) <= 0) {
        hi = t;
        break;
      } else {
        lo = t;
      }
    if (hi == 0) continue;
    for (int it = 0; it < 200; ++it) {
      double mid = 0.5 * (lo + hi);
      (value(mid) > 0 ? lo : hi) = mid;
    }
    std::vector<std::complex<double>> z(v);
    for (auto& x : z) x *= hi;
    double g = 0;
    for (const auto& f : grad) g += std::norm(at(f, z));
    if (std::sqrt(g) < 1e-9) throw Error("invalid_psi", "psi is critical at a sampled boundary point");
    ++found;
  }
  if (found == 0) throw Error("invalid_psi", "no boundary point found along sampled rays");
}

json matrix_json(const Matrix<RatFunc>& m) {
  json out = json::array();
  for (const auto& row : m) {
    json r = json::array();
    for (const auto& x : row) r.push_back(io::to_json(x));
    out.push_back(std::move(r));
  }
  return out;
}

bool all_regular(const Alternating& a, const Poly& psi) {
  for (const auto& [m, c] : a.terms())
    if (!c.is_psi_regular(psi)) return false;
  return true;
}

json header(const std::string& cmd, const RunConfig& c, const cr::Domain& d) {
  return {{"command", cmd}, {"domain", c.domain}, {"n", d.n}, {"chart", c.chart}, {"psi", io::to_json(d.psi)}};
}

json cmd_frame(const RunConfig& c) {
  auto d = make_domain(c);
  auto e = cr::build_frame(d, chart_kind(c));
  json out = header("frame", c, d);
  out["locus"] = e.locus;
  out["anchor"] = matrix_json(e.anchor);
  json st = json::array();
  for (int a = 0; a < e.rank(); ++a)
    for (int b = a + 1; b < e.rank(); ++b)
      for (int k = 0; k < e.rank(); ++k) {
        const RatFunc& x = e.structure[std::size_t(a)][std::size_t(b)][std::size_t(k)];
        if (!x.is_zero()) st.push_back({{"a", a}, {"b", b}, {"k", k}, {"coeff", io::to_json(x)}});
      }
  out["structure"] = st;
  auto reg = cr::check_regularity(e);
  out["regularity"] = {{"verdict", verdict(reg.regular)}, {"failures", reg.failures}};
  return out;
}

json cmd_sigma(const RunConfig& c) {
  auto d = make_domain(c);
  auto e = cr::build_frame(d, chart_kind(c));
  Alternating s = cr::pullback_sigma(e);
  json out = header("sigma", c, d);
  out["sigma_over_i"] = io::to_json(s);
  out["psi_regularity"] = verdict(all_regular(s, d.psi));
  out["matches_decomposition"] = verdict(s == cr::sigma_from_decomposition(e, cr::hessian_decomposition(e)));
  return out;
}

json cmd_levi(const RunConfig& c) {
  auto d = make_domain(c);
  auto e = cr::build_frame(d, chart_kind(c));
  json out = header("levi", c, d);
  out["levi_matrix"] = matrix_json(cr::levi_matrix(e));
  auto vol = cr::volume_identity_check(d);
  out["volume_identity"] = {{"verdict", verdict(vol.holds)},
                            {"without_binomial", verdict(vol.holds_without_binomial)},
                            {"residual", io::to_json(vol.residual)}};
  return out;
}

json cmd_canonical(const RunConfig& c) {
  auto d = make_domain(c);
  auto e = cr::build_frame(d, chart_kind(c));
  auto can = cr::canonical_form(e);
  json out = header("canonical", c, d);
  out["nu0"] = io::to_json(can.nu0);
  out["omega_can_over_i"] = io::to_json(can.pulled_back);
  out["coordinate_over_i"] = io::to_json(can.coordinate);
  out["psi_regularity"] = verdict(all_regular(can.pulled_back, d.psi));
  if (d.name == "ball")
    out["ball_multiple_of_omega"] =
        verdict(can.pulled_back == cr::pullback_sigma(e) * RatFunc(long(-(d.n + 2))));
  return out;
}

json tensor_entries(const pk::Tensor3& t) {
  json out = json::array();
  for (std::size_t a = 0; a < t.size(); ++a)
    for (std::size_t b = 0; b < t[a].size(); ++b)
      for (std::size_t k = 0; k < t[a][b].size(); ++k)
        if (!t[a][b][k].is_zero()) out.push_back({{"a", a}, {"b", b}, {"c", k}, {"coeff", io::to_json(t[a][b][k])}});
  return out;
}

json cmd_connection(const RunConfig& c) {
  auto d = make_domain(c);
  auto data = pk::para_kahler_data(cr::build_frame(d, chart_kind(c)));
  auto conn = pk::build_connection(data);
  auto curv = pk::curvature(conn, data);
  json out = header("connection", c, d);
  out["gamma"] = tensor_entries(conn.gamma);
  out["torsion"] = verdict(pk::is_zero(pk::torsion(conn, data)));
  out["compatibility"] = verdict(pk::is_zero(pk::compatibility_residual(conn, data)));
  out["curvature_bidegree_11"] = verdict(curv.bidegree_11);
  out["curvature_violations"] = curv.violations;
  return out;
}

fq::FedosovData solve_for(fq::FedosovSystem& sys, const RunConfig& c, int max_degree) {
  return fq::solve_r(sys, c.mu == "omega" ? fq::mu_symplectic(sys) : fq::mu_canonical(sys), max_degree);
}

json cmd_fedosov(const RunConfig& c) {
  auto d = make_domain(c);
  fq::FedosovSystem sys(pk::para_kahler_data(cr::build_frame(d, chart_kind(c))));
  int n_max = 2 * c.order + 1;
  auto f = solve_for(sys, c, n_max);
  auto star = fq::extract_bidiff(sys, f, c.order);
  json out = header("fedosov", c, d);
  out["mu"] = c.mu;
  out["order"] = c.order;
  out["truncation"] = n_max;
  json b = json::array();
  bool regular = true;
  for (int k = 0; k <= c.order; ++k) {
    b.push_back(io::to_json(star.b[std::size_t(k)], k));
    for (const auto& [vw, x] : star.b[std::size_t(k)]) regular = regular && x.is_psi_regular(d.psi);
  }
  out["products"] = b;
  out["bipolarization"] = verdict(star.bipolarized);
  out["violations"] = star.violations;
  out["psi_regularity"] = verdict(regular);
  if (c.order >= 1)
    out["antisymmetric_first_is_poisson"] =
        verdict(fq::antisymmetrize(star.b[1]) == fq::poisson_bidiff(sys.data()));
  return out;
}

json cmd_normal_form(const RunConfig& c) {
  auto chart = nf::contact_chart(c.n);
  RatFunc a(parse_poly(c.a, chart.alpha));
  auto grid = nf::default_grid(chart);
  auto s = nf::integrate_normalization(chart, a, grid, 1e-3, c.tol);
  json rows = json::array();
  for (const auto& r : s.rows) rows.push_back({{"point", r.point}, {"image", r.image}, {"residual", r.residual}});
  return {{"command", "normal-form"}, {"n", c.n}, {"a", c.a}, {"tol", c.tol}, {"step", s.step},
          {"order", s.order}, {"refinements", s.refinements}, {"fd_step", s.fd_step},
          {"max_residual", s.max_residual}, {"verdict", verdict(s.max_residual < c.tol)}, {"rows", rows}};
}

json checks_json(const std::vector<bt::CrossCheck>& checks) {
  json out = json::array();
  for (const auto& k : checks)
    out.push_back({{"k", k.k}, {"label", k.label}, {"pass", k.pass}, {"detail", k.detail}});
  return out;
}

std::vector<Scalar> disc_points() {
  return {Scalar::rational(1, 3), Scalar(mpq_class(1, 4), mpq_class(1, 5)), Scalar(mpq_class(-1, 2), mpq_class(1, 7)),
          Scalar(mpq_class(0), mpq_class(-2, 3)), Scalar::rational(-1, 9)};
}

json cmd_oracle(const RunConfig& c) {
  auto s = bt::disc(3 * c.order + 14);
  Poly z = Poly::var(s.alpha, 0), zb = Poly::var(s.alpha, 1);
  std::vector<std::pair<Poly, Poly>> pairs{{z, zb}, {z * z, zb}, {z * zb, z}, {z, zb * zb}};
  fq::FedosovSystem sys(pk::para_kahler_data(cr::build_frame(cr::ball(0), chart_kind(c))));
  auto f = solve_for(sys, c, 2 * c.order + 1);
  auto star = fq::extract_bidiff(sys, f, c.order);
  auto direct = bt::cross_validate(s, sys, star, pairs, disc_points(), false);
  auto opposite = bt::cross_validate(s, sys, star, pairs, disc_points(), true);
  bool opposite_antisym = true;
  for (const auto& k : opposite.checks)
    if (k.k == 1 && k.label.rfind("antisymmetric", 0) == 0) opposite_antisym = opposite_antisym && k.pass;
  json exps = json::array();
  for (const auto& [a, b] : pairs) {
    auto rep = bt::bt_expansion(s, a, b, c.order);
    json cs = json::array();
    for (const auto& p : rep.c) cs.push_back(io::to_json(p));
    exps.push_back({{"f", io::to_json(a)}, {"g", io::to_json(b)}, {"c", cs}, {"consistent", rep.consistent}});
  }
  json out = {{"command", "oracle-compare"}, {"domain", "disc"}, {"chart", c.chart}, {"mu", c.mu},
              {"order", c.order}, {"cutoff", s.cutoff}, {"expansions", exps}};
  out["kappa"] = io::to_json(direct.kappa);
  out["checks"] = checks_json(direct.checks);
  out["verdict_first_order"] = verdict(direct.pass_through(1));
  out["verdict_all_orders"] = verdict(direct.all_pass());
  out["opposite"] = {{"kappa", io::to_json(opposite.kappa)}, {"antisymmetric_fit", verdict(opposite_antisym)},
                     {"separation", verdict(opposite.pass_through(1))}};
  return out;
}

}  // namespace

namespace {

using Check = std::pair<std::string, std::function<bool()>>;

std::vector<Check> invariant_suite(std::uint64_t seed) {
  std::vector<Check> out;
  out.emplace_back("symbolic/json-roundtrip", [seed] {
    std::mt19937_64 rng(seed);
    auto alpha = complex_alphabet(1);
    for (int t = 0; t < 20; ++t) {
      Poly p(alpha, Scalar(0));
      for (int k = 0; k < 4; ++k) {
        Exponent e{};
        for (int v = 0; v < 4; ++v) e[std::size_t(v)] = std::uint8_t(rng() % 3);
        p += Poly::monomial(alpha, e, Scalar::rational(long(rng() % 11) - 5, long(rng() % 4) + 1) + Scalar(long(rng() % 3)) * Scalar::i());
      }
      std::string text = io::to_json(p).dump();
      if (io::to_json(io::poly_from_json(json::parse(text))).dump() != text) return false;
    }
    return true;
  });
  out.emplace_back("normal-form/inversion", [] {
    for (int n = 0; n <= 2; ++n) {
      auto c = nf::contact_chart(n);
      if (invert_two_tensor(-nf::colebrun_form(c)) != nf::lebrun_bivector(c)) return false;
    }
    return true;
  });
  out.emplace_back("normal-form/contraction-dr", [] {
    for (int n = 0; n <= 2; ++n) {
      auto c = nf::contact_chart(n);
      if (interior(c.d(c.r()), nf::lebrun_bivector(c)) != c.partial(c.u()) * c.coord(c.r()).pow(2)) return false;
    }
    return true;
  });
  out.emplace_back("normal-form/euler-exactness", [] {
    auto c = nf::contact_chart(1);
    auto pi = nf::lebrun_bivector(c);
    return nf::exactness_test(c, pi, c.partial(c.r()) * c.coord(c.r())).is_zero() &&
           !nf::exactness_test(c, pi, c.partial(c.r())).is_zero();
  });
  out.emplace_back("normal-form/moser-residual", [] {
    auto c = nf::contact_chart(0);
    auto s = nf::integrate_normalization(c, RatFunc(parse_poly("u", c.alpha)), nf::default_grid(c), 1e-3, 1e-8);
    return s.max_residual < 1e-8;
  });
  out.emplace_back("algebroid/regularity", [] { return cr::check_regularity(cr::build_frame(cr::ball(1))).regular; });
  out.emplace_back("algebroid/sigma-regularity", [] {
    auto e = cr::build_frame(cr::ball(1));
    return all_regular(cr::pullback_sigma(e), e.psi());
  });
  out.emplace_back("algebroid/volume-identity", [] {
    return cr::volume_identity_check(cr::ball(0)).holds && cr::volume_identity_check(cr::ball(1)).holds;
  });
  out.emplace_back("algebroid/oka-positivity", [] {
    auto e = cr::build_frame(cr::ball(1));
    auto p = cr::sphere_point(mpq_class(1, 2), mpq_class(1, 3), mpq_class(2, 5));
    for (long k : {9L, 99L, 999L}) {
      Scalar s = Scalar::rational(k, k + 1);
      if (!cr::oka_psh_check(e, cr::point_from({p[0] * s, p[1] * s})).positive_definite) return false;
    }
    return true;
  });
  out.emplace_back("algebroid/canonical-multiple", [] {
    for (int n = 0; n <= 1; ++n) {
      auto e = cr::build_frame(cr::ball(n));
      if (cr::canonical_form(e).pulled_back != cr::pullback_sigma(e) * RatFunc(long(-(n + 2)))) return false;
    }
    return true;
  });
  out.emplace_back("connection/certified", [] {
    auto data = pk::para_kahler_data(cr::build_frame(cr::ball(1)));
    auto conn = pk::build_connection(data);
    return pk::is_zero(pk::torsion(conn, data)) && pk::is_zero(pk::compatibility_residual(conn, data)) &&
           pk::curvature(conn, data).bidegree_11;
  });
  out.emplace_back("fedosov/postconditions", [seed] {
    fq::FedosovSystem sys(pk::para_kahler_data(cr::build_frame(cr::ball(0))));
    for (auto mu : {fq::mu_symplectic(sys), fq::mu_canonical(sys)}) {
      auto f = fq::solve_r(sys, mu, 5);
      auto rep = fq::verify(sys, f, seed);
      if (!(rep.delta_inverse_vanishes && rep.min_degree == 3 && rep.equation_holds && rep.d_squared_vanishes))
        return false;
    }
    return true;
  });
  out.emplace_back("star/product", [] {
    fq::FedosovSystem sys(pk::para_kahler_data(cr::build_frame(cr::ball(0))));
    auto star = fq::extract_bidiff(sys, fq::solve_r(sys, fq::mu_symplectic(sys), 5), 2);
    auto f = fq::JetPoly::symbol(0, {}), g = fq::JetPoly::symbol(1, {}), h = fq::JetPoly::symbol(2, {});
    for (const auto& x : fq::associator(sys.jets(), star, f, g, h))
      if (!x.is_zero()) return false;
    for (const auto& b : star.b)
      for (const auto& [vw, x] : b)
        if (!x.is_psi_regular(sys.data().e.psi())) return false;
    return star.bipolarized && fq::antisymmetrize(star.b[1]) == fq::poisson_bidiff(sys.data());
  });
  out.emplace_back("oracle/agreement", [] {
    RunConfig c;
    c.domain = "disc";
    c.n = 0;
    json r = cmd_oracle(c);
    return r["verdict_all_orders"] == "pass";
  });
  out.emplace_back("oracle/hermitian", [seed] {
    std::mt19937_64 rng(seed);
    auto s = bt::ball_space(2, 6);
    for (int t = 0; t < 4; ++t) {
      Poly f(s.alpha, Scalar(0));
      for (int k = 0; k < 3; ++k) {
        Exponent e{};
        for (int v = 0; v < 4; ++v) e[std::size_t(v)] = std::uint8_t(rng() % 2);
        f += Poly::monomial(s.alpha, e, Scalar(mpq_class(long(rng() % 7) - 3), mpq_class(long(rng() % 5) - 2)));
      }
      if (!bt::hermitian_pair(s, f, 2)) return false;
    }
    return true;
  });
  return out;
}

json cmd_selftest(const RunConfig& c) {
  json checks = json::object();
  int passed = 0, failed = 0;
  for (const auto& [label, fn] : invariant_suite(c.seed)) {
    bool ok = false;
    try {
      ok = fn();
    } catch (const std::exception&) {
      ok = false;
    }
    checks[label] = verdict(ok);
    ++(ok ? passed : failed);
  }
  return {{"command", "selftest"}, {"seed", c.seed}, {"checks", checks}, {"passed", passed}, {"failed", failed}};
}

}  // namespace

int main_entry(int argc, char** argv) {
  CLI::App app{"Boundary-aware deformation quantization toolkit"};
  app.require_subcommand(1);
  RunConfig cfg;
  std::string chosen;
  static const std::map<std::string, std::string> about{
      {"frame", "adapted frame and structure functions"},
      {"sigma", "anchor and regularity of the boundary algebroid"},
      {"levi", "Levi form and its leading minors"},
      {"canonical", "Ricci form and canonical multiple"},
      {"connection", "para-Kahler connection with certificate"},
      {"fedosov", "Fedosov connection and star product"},
      {"normal-form", "Moser flow to the boundary normal form"},
      {"oracle-compare", "Berezin-Toeplitz comparison on the disc"},
      {"selftest", "run all internal checks"}};
  for (const auto& name : subcommands()) {
    auto* sub = app.add_subcommand(name, about.at(name));
    sub->add_option("--domain", cfg.domain, "ball, disc or custom");
    sub->add_option("--psi", cfg.psi, "defining polynomial of a custom domain");
    sub->add_option("--n", cfg.n, "complex dimension minus one");
    sub->add_option("--order", cfg.order, "expansion order K");
    sub->add_option("--mu", cfg.mu, "omega or omega+canonical");
    sub->add_option("--chart", cfg.chart, "boundary or interior");
    sub->add_option("--tol", cfg.tol, "tolerance for numerical checks");
    sub->add_option("--out", cfg.out, "output file (default stdout)");
    sub->add_option("--seed", cfg.seed, "seed for randomized checks");
    sub->add_option("--a", cfg.a, "perturbation a(u, q, p, r) for normal-form");
    sub->callback([&chosen, name] { chosen = name; });
  }
  auto emit = [&](const json& j) {
    std::string text = render(j);
    if (cfg.out.empty()) {
      std::cout << text;
      return true;
    }
    std::ofstream f(cfg.out, std::ios::binary);
    f << text;
    return bool(f);
  };
  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cout << render(error_json("invalid_config", e.what()));
    return 2;
  }
  if (cfg.domain == "disc") cfg.n = 0;
  try {
    json out = run(chosen, cfg);
    if (!emit(out)) {
      std::cout << render(error_json("io_error", "cannot write " + cfg.out));
      return 2;
    }
    return (chosen == "selftest" && out["failed"] != 0) ? 1 : 0;
  } catch (const Error& e) {
    emit(error_json(e.code(), e.what()));
    return 2;
  } catch (const std::exception& e) {
    emit(error_json("internal", e.what()));
    return 2;
  }
}

const std::vector<std::string>& subcommands() {
  static const std::vector<std::string> names{"frame",  "sigma",       "levi",          "canonical", "connection",
                                              "fedosov", "normal-form", "oracle-compare", "selftest"};
  return names;
}

void validate(const std::string& sub, const RunConfig& c) {
  if (std::find(subcommands().begin(), subcommands().end(), sub) == subcommands().end())
    throw Error("invalid_config", "unknown subcommand '" + sub + "'");
  if (c.domain != "ball" && c.domain != "disc" && c.domain != "custom")
    throw Error("invalid_config", "domain must be ball, disc or custom");
  if (c.domain == "custom" && c.psi.empty()) throw Error("invalid_config", "custom domain needs --psi");
  if (c.domain != "custom" && !c.psi.empty()) throw Error("invalid_config", "--psi requires --domain custom");
  if (c.n < 0 || c.n > 6) throw Error("invalid_config", "n must lie in 0..6");
  if (c.order < 0) throw Error("invalid_config", "order must be nonnegative");
  if (c.order > kMaxOrder) throw Error("order_too_large", "order is capped at " + std::to_string(kMaxOrder));
  if (c.mu != "omega" && c.mu != "omega+canonical") throw Error("invalid_config", "mu must be omega or omega+canonical");
  if (c.chart != "boundary" && c.chart != "interior") throw Error("invalid_config", "chart must be boundary or interior");
  if (!(c.tol > 0)) throw Error("invalid_config", "tol must be positive");
  if (sub == "oracle-compare" && !(c.domain == "disc" || (c.domain == "ball" && c.n == 0)))
    throw Error("unsupported_domain", "oracle-compare runs on the disc");
  if (c.domain == "custom") check_custom_psi(cr::custom_domain(c.n, c.psi), c.seed);
}

json run(const std::string& sub, const RunConfig& c) {
  validate(sub, c);
  if (sub == "frame") return cmd_frame(c);
  if (sub == "sigma") return cmd_sigma(c);
  if (sub == "levi") return cmd_levi(c);
  if (sub == "canonical") return cmd_canonical(c);
  if (sub == "connection") return cmd_connection(c);
  if (sub == "fedosov") return cmd_fedosov(c);
  if (sub == "normal-form") return cmd_normal_form(c);
  if (sub == "oracle-compare") return cmd_oracle(c);
  return cmd_selftest(c);
}

std::string render(const json& j) { return j.dump(2) + "\n"; }

json error_json(const std::string& code, const std::string& detail) { return {{"error", code}, {"detail", detail}}; }

}  // namespace bdq::cli
