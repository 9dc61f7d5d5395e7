// Command-line front end: reproducible experiments over the library with
// machine-readable JSON/CSV output. Every output embeds the seed, the
// fixed-point precision, and (for config-driven runs) the config hash.

#include <complex>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "polyrecur/errors.hpp"
#include "polyrecur/experiment.hpp"
#include "polyrecur/exp_sums.hpp"
#include "polyrecur/fixed_point.hpp"
#include "polyrecur/int_poly.hpp"
#include "polyrecur/lattice.hpp"
#include "polyrecur/padic.hpp"
#include "polyrecur/parallel.hpp"
#include "polyrecur/recurrence.hpp"

using polyrecur::ordered_json;

namespace {

struct GlobalOpts {
  int workers = 0;
  double tol = 1e-12;
  std::uint64_t seed = 0;
  bool seed_set = false;
  std::string out;
};

void emit(const ordered_json& j, const std::string& out_path) {
  std::string text = j.dump(2) + "\n";
  if (!out_path.empty()) {
    std::ofstream f(out_path, std::ios::binary);
    if (!f) throw polyrecur::Error("cannot open output file: " + out_path);
    f << text;
  }
  std::cout << text;
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw polyrecur::Error("cannot open output file: " + path);
  f << text;
}

polyrecur::Lattice lattice_from_options(const std::string& lattice_json, double R, int dim) {
  if (!lattice_json.empty()) {
    nlohmann::json j = nlohmann::json::parse(lattice_json);
    int d = j.at("dim").get<int>();
    std::vector<double> basis = j.at("basis").get<std::vector<double>>();
    return polyrecur::Lattice::from_basis(d, basis);
  }
  return polyrecur::Lattice::scaled_integer(R, dim);
}

std::vector<double> parse_point(const std::string& s, int dim) {
  std::vector<double> x;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) x.push_back(std::stod(item));
  if (static_cast<int>(x.size()) != dim)
    throw polyrecur::ConfigError("point has " + std::to_string(x.size()) + " coordinates, lattice dimension is " +
                                 std::to_string(dim));
  return x;
}

ordered_json dichotomy_json(const polyrecur::Dichotomy& d) {
  ordered_json j;
  j["case"] = d.kind == polyrecur::Dichotomy::Kind::CaseI    ? "I"
              : d.kind == polyrecur::Dichotomy::Kind::CaseII ? "II"
                                                             : "exhausted";
  j["f_value"] = polyrecur::format_double(d.f_value);
  j["exponent_budget"] = d.exponent_budget.get_str();
  j["precondition_ok"] = d.precondition_ok;
  if (d.kind != polyrecur::Dichotomy::Kind::CaseI) {
    j["xi_coords"] = d.xi_coords;
    j["xi"] = d.xi;
    j["q_prime"] = d.q_prime;
    j["achieved_norm"] = polyrecur::format_double(d.achieved_norm);
  }
  return j;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "polyrecur: exact-arithmetic experiments on polynomial recurrence mod 1,\n"
      "root chains mod prime powers, Gaussian lattice masses, and exponential sums.\n"
      "CSV outputs use the columns N,max_norm,n_star (scaling/recur) and\n"
      "theta,modulus,q_prime,dist,applicable (weyl sweeps)."};
  app.require_subcommand(1);

  GlobalOpts g;
  if (const char* env = std::getenv("POLYRECUR_WORKERS")) g.workers = std::atoi(env);
  if (const char* env = std::getenv("POLYRECUR_TOL")) g.tol = std::atof(env);
  app.add_option("--workers", g.workers, "worker threads (0 = available parallelism)");
  app.add_option("--tol", g.tol, "truncation tolerance for lattice sums");
  auto* seed_opt = app.add_option("--seed", g.seed, "seed for 'random' multipliers/rotations");
  app.add_option("--out", g.out, "write the JSON result to this file as well as stdout");

  // check-intersective
  std::string ci_poly;
  long ci_bound = 100;
  int ci_depth = 6;
  auto* ci = app.add_subcommand("check-intersective",
                                "search for an integer root or a prime-power modulus with no root");
  ci->add_option("poly", ci_poly, "polynomial (coefficient list or human form)")->required();
  ci->add_option("--prime-bound", ci_bound, "largest prime tested");
  ci->add_option("--depth", ci_depth, "largest prime-power exponent tested");

  // aux-poly
  std::string ap_poly;
  long ap_q = 1;
  auto* ap = app.add_subcommand("aux-poly", "rescaled polynomial along the chosen root class mod q");
  ap->add_option("poly", ap_poly)->required();
  ap->add_option("q", ap_q, "modulus")->required();

  // lattice-based subcommands share these options.
  struct LatticeArgs {
    std::string lattice_json;
    double R = 1.0;
    int dim = 1;
  };
  auto add_lattice_opts = [](CLI::App* cmd, LatticeArgs& la) {
    cmd->add_option("--lattice", la.lattice_json, "lattice as JSON {\"dim\":d,\"basis\":[row-major]}");
    cmd->add_option("--R", la.R, "scale for R*Z^d when --lattice is absent");
    cmd->add_option("--dim", la.dim, "dimension for R*Z^d when --lattice is absent");
  };

  LatticeArgs th_lat;
  double th_t = 1.0;
  std::string th_x;
  auto* th = app.add_subcommand("theta", "truncated Gaussian lattice mass");
  add_lattice_opts(th, th_lat);
  th->add_option("--t", th_t, "width parameter (> 0)");
  th->add_option("--x", th_x, "center, comma-separated")->required();

  LatticeArgs ps_lat;
  double ps_t = 1.0;
  std::string ps_x;
  auto* ps = app.add_subcommand("poisson", "both sides of the dual summation identity");
  add_lattice_opts(ps, ps_lat);
  ps->add_option("--t", ps_t, "width parameter (> 0)");
  ps->add_option("--x", ps_x, "center, comma-separated")->required();

  LatticeArgs fa_lat;
  std::string fa_poly, fa_alpha;
  long fa_n = 100;
  auto* fa = app.add_subcommand("f-avg", "determinant-normalized average Gaussian mass along an orbit");
  add_lattice_opts(fa, fa_lat);
  fa->add_option("poly", fa_poly)->required();
  fa->add_option("--alpha", fa_alpha, "multipliers, comma-separated (symbols, decimals, 'random')")
      ->required();
  fa->add_option("--n", fa_n, "orbit length");

  LatticeArgs al_lat;
  std::string al_poly, al_alpha;
  long al_n = 100, al_q = 1, al_qpmax = 64;
  double al_xi_radius = 4.0, al_norm_tol = 1e-6;
  auto* al = app.add_subcommand("alternative",
                                "mass dichotomy: large average or a short dual vector with a "
                                "near-integral dilate");
  add_lattice_opts(al, al_lat);
  al->add_option("poly", al_poly)->required();
  al->add_option("--alpha", al_alpha)->required();
  al->add_option("--n", al_n, "orbit length");
  al->add_option("--q", al_q, "modulus tag carried by the polynomial");
  al->add_option("--xi-radius", al_xi_radius, "dual enumeration radius");
  al->add_option("--qprime-max", al_qpmax, "largest dilate tested");
  al->add_option("--norm-tol", al_norm_tol, "distance defining success");

  std::string wy_poly, wy_theta;
  long wy_n = 10000;
  double wy_delta = 0.1, wy_margin = 1e3;
  long wy_sweep = 0;
  double wy_sweep_start = 0, wy_sweep_stop = 1;
  auto* wy = app.add_subcommand("weyl", "normalized exponential sum and denominator certificate");
  wy->add_option("poly", wy_poly)->required();
  wy->add_option("theta", wy_theta, "rotation (symbol or decimal)")->required();
  wy->add_option("N", wy_n, "sum length");
  wy->add_option("--delta", wy_delta, "certificate threshold in (0,1)");
  wy->add_option("--margin", wy_margin, "denominator search margin");
  wy->add_option("--sweep", wy_sweep, "emit CSV for this many evenly spaced theta values");
  wy->add_option("--sweep-start", wy_sweep_start);
  wy->add_option("--sweep-stop", wy_sweep_stop);

  long gd_q = 10000, gd_g = 100, gd_n = 10000;
  auto* gd = app.add_subcommand("gauss-demo",
                                "two-polynomial phase sum mod q: coefficients sharing a factor g "
                                "with q only cancel at the q/g scale");
  gd->add_option("--q", gd_q, "modulus");
  gd->add_option("--g", gd_g, "shared factor (must divide q)");
  gd->add_option("--n", gd_n, "sum length");

  std::string rc_config;
  auto* rc = app.add_subcommand("recur", "single exhaustive search from a config file");
  rc->add_option("config", rc_config, "key = value config file")->required();

  std::string sc_config;
  auto* sc = app.add_subcommand("scaling", "grid of searches with a power-law fit, CSV + JSON");
  sc->add_option("config", sc_config, "key = value config file")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }
  g.seed_set = seed_opt->count() > 0;

  try {
    polyrecur::ThetaOptions topt;
    topt.tolerance = g.tol;

    if (*ci) {
      polyrecur::IntPoly h = polyrecur::IntPoly::parse(ci_poly);
      polyrecur::IntersectivityVerdict v = polyrecur::certify_intersective(h, ci_bound, ci_depth);
      ordered_json j;
      j["poly"] = h.to_human();
      switch (v.kind) {
        case polyrecur::IntersectivityVerdict::Kind::CertifiedByIntegerRoot:
          j["verdict"] = "certified-by-integer-root";
          j["integer_root"] = v.integer_root.get_str();
          break;
        case polyrecur::IntersectivityVerdict::Kind::Refuted:
          j["verdict"] = "refuted";
          j["modulus"] = v.refuted_modulus.get_str();
          j["witness"] = {{"residues_checked", v.witness.residues_checked},
                          {"exhaustive", v.witness.exhaustive}};
          break;
        case polyrecur::IntersectivityVerdict::Kind::NoObstructionFound:
          j["verdict"] = "no-obstruction-found";
          j["prime_bound"] = v.prime_bound;
          j["depth"] = v.depth;
          break;
      }
      emit(j, g.out);
      return v.kind == polyrecur::IntersectivityVerdict::Kind::Refuted ? 1 : 0;
    }

    if (*ap) {
      polyrecur::IntPoly h = polyrecur::IntPoly::parse(ap_poly);
      if (ap_q < 1) throw polyrecur::ConfigError("q must be >= 1");
      polyrecur::RootSystem rs = polyrecur::root_system_for_modulus(h, ap_q);
      polyrecur::AuxiliaryData aux = polyrecur::auxiliary(rs, ap_q);
      ordered_json j;
      j["q"] = aux.q.get_str();
      j["r_q"] = aux.r_q.get_str();
      j["lambda_q"] = aux.lambda_q.get_str();
      ordered_json coeffs = ordered_json::array();
      for (const mpz_class& c : aux.h_q.coeffs()) coeffs.push_back(c.get_str());
      j["h_q"] = coeffs;
      j["h_q_human"] = aux.h_q.to_human();
      emit(j, g.out);
      return 0;
    }

    if (*th) {
      polyrecur::Lattice L = lattice_from_options(th_lat.lattice_json, th_lat.R, th_lat.dim);
      std::vector<double> x = parse_point(th_x, L.dim());
      polyrecur::ThetaValue v = polyrecur::theta(L, th_t, x, topt);
      ordered_json j;
      j["value"] = polyrecur::format_double(v.value);
      j["truncation_radius"] = polyrecur::format_double(v.truncation_radius);
      j["tail_bound"] = polyrecur::format_double(v.tail_bound);
      j["det"] = polyrecur::format_double(L.det());
      emit(j, g.out);
      return 0;
    }

    if (*ps) {
      polyrecur::Lattice L = lattice_from_options(ps_lat.lattice_json, ps_lat.R, ps_lat.dim);
      std::vector<double> x = parse_point(ps_x, L.dim());
      polyrecur::PoissonIdentity v = polyrecur::poisson_check(L, ps_t, x, topt);
      ordered_json j;
      j["lhs"] = polyrecur::format_double(v.lhs);
      j["rhs"] = polyrecur::format_double(v.rhs_real);
      j["rhs_imag"] = polyrecur::format_double(v.rhs_imag);
      j["gap"] = polyrecur::format_double(v.gap);
      emit(j, g.out);
      return 0;
    }

    if (*fa) {
      polyrecur::Lattice L = lattice_from_options(fa_lat.lattice_json, fa_lat.R, fa_lat.dim);
      polyrecur::IntPoly h = polyrecur::IntPoly::parse(fa_poly);
      std::vector<std::string> specs;
      std::stringstream ss(fa_alpha);
      std::string item;
      while (std::getline(ss, item, ',')) specs.push_back(item);
      long prec = polyrecur::precision_for(h, fa_n);
      polyrecur::FixedVector alpha = polyrecur::resolve_alphas(specs, g.seed, prec);
      double f = polyrecur::f_avg(h, L, alpha, fa_n, g.workers, topt);
      ordered_json j;
      j["f"] = polyrecur::format_double(f);
      j["N"] = fa_n;
      j["det"] = polyrecur::format_double(L.det());
      j["precision_bits"] = prec;
      emit(j, g.out);
      return 0;
    }

    if (*al) {
      polyrecur::Lattice L = lattice_from_options(al_lat.lattice_json, al_lat.R, al_lat.dim);
      polyrecur::IntPoly h = polyrecur::IntPoly::parse(al_poly);
      std::vector<std::string> specs;
      std::stringstream ss(al_alpha);
      std::string item;
      while (std::getline(ss, item, ',')) specs.push_back(item);
      long prec = polyrecur::precision_for(h, al_n);
      polyrecur::FixedVector alpha = polyrecur::resolve_alphas(specs, g.seed, prec);
      polyrecur::Dichotomy d = polyrecur::alternative_check(h, L, alpha, al_q, al_n, al_xi_radius,
                                                            al_qpmax, al_norm_tol, g.workers, topt);
      ordered_json j = dichotomy_json(d);
      j["seed"] = g.seed;
      j["precision_bits"] = prec;
      emit(j, g.out);
      return 0;
    }

    if (*wy) {
      polyrecur::IntPoly h = polyrecur::IntPoly::parse(wy_poly);
      long prec = polyrecur::precision_for(h, wy_n);
      if (wy_sweep > 0) {
        std::string csv = "theta,modulus,q_prime,dist,applicable\n";
        for (long i = 0; i < wy_sweep; ++i) {
          double tv = wy_sweep_start +
                      (wy_sweep_stop - wy_sweep_start) * static_cast<double>(i) /
                          static_cast<double>(std::max<long>(1, wy_sweep - 1));
          polyrecur::FixedReal theta = polyrecur::FixedReal::from_double(tv, prec);
          auto cert = polyrecur::weyl_certificate(h, theta, wy_n, wy_delta, wy_margin, g.workers);
          std::complex<double> s = polyrecur::weyl_sum(h, theta, wy_n, g.workers);
          csv += polyrecur::format_double(tv);
          csv += ",";
          csv += polyrecur::format_double(std::abs(s));
          csv += ",";
          csv += cert ? cert->q_prime.get_str() : "";
          csv += ",";
          csv += cert ? polyrecur::format_double(cert->dist) : "";
          csv += ",";
          csv += cert ? "1" : "0";
          csv += "\n";
        }
        if (!g.out.empty())
          write_file(g.out, csv);
        else
          std::cout << csv;
        return 0;
      }
      polyrecur::FixedReal theta =
          wy_theta == "random"
              ? [&] {
                  std::mt19937_64 rng(g.seed);
                  return polyrecur::FixedReal::random_unit(rng, prec);
                }()
              : polyrecur::FixedReal::parse(wy_theta, prec);
      std::complex<double> s = polyrecur::weyl_sum(h, theta, wy_n, g.workers);
      auto cert = polyrecur::weyl_certificate(h, theta, wy_n, wy_delta, wy_margin, g.workers);
      ordered_json j;
      j["modulus"] = polyrecur::format_double(std::abs(s));
      j["phase"] = polyrecur::format_double(std::arg(s));
      j["N"] = wy_n;
      j["delta"] = wy_delta;
      j["precision_bits"] = prec;
      if (cert) {
        ordered_json c;
        c["q_prime"] = cert->q_prime.get_str();
        c["dist"] = polyrecur::format_double(cert->dist);
        c["sum_modulus"] = polyrecur::format_double(cert->sum_modulus);
        j["certificate"] = c;
      } else {
        j["certificate"] = nullptr;
      }
      emit(j, g.out);
      return 0;
    }

    if (*gd) {
      if (gd_g < 1 || gd_q % gd_g != 0)
        throw polyrecur::ConfigError("g must divide q");
      std::vector<polyrecur::IntPoly> polys{polyrecur::IntPoly::monomial(2),
                                            polyrecur::IntPoly::monomial(3)};
      std::vector<mpz_class> degenerate{mpz_class(gd_g), mpz_class(3 * gd_g)};
      std::vector<mpz_class> generic{mpz_class(1), mpz_class(3)};
      std::complex<double> s_deg =
          polyrecur::gauss_sum_multi(polys, degenerate, mpz_class(gd_q), gd_n);
      std::complex<double> s_gen = polyrecur::gauss_sum_multi(polys, generic, mpz_class(gd_q), gd_n);
      ordered_json j;
      j["q"] = gd_q;
      j["g"] = gd_g;
      j["N"] = gd_n;
      j["degenerate_modulus"] = polyrecur::format_double(std::abs(s_deg));
      j["generic_modulus"] = polyrecur::format_double(std::abs(s_gen));
      j["scale_q"] = polyrecur::format_double(gd_n / std::sqrt(static_cast<double>(gd_q)));
      j["scale_q_over_g"] =
          polyrecur::format_double(gd_n / std::sqrt(static_cast<double>(gd_q / gd_g)));
      emit(j, g.out);
      return 0;
    }

    if (*rc || *sc) {
      polyrecur::ExperimentConfig cfg =
          polyrecur::ExperimentConfig::parse_file(*rc ? rc_config : sc_config);
      if (g.workers > 0) cfg.workers = g.workers;
      if (g.seed_set) cfg.seed = g.seed;
      polyrecur::ExperimentOutput out = *rc ? polyrecur::run_recur(cfg) : polyrecur::run_scaling(cfg);
      if (!cfg.out_csv.empty()) write_file(cfg.out_csv, out.csv);
      if (!cfg.out_json.empty()) write_file(cfg.out_json, out.json.dump(2) + "\n");
      emit(out.json, g.out);
      return 0;
    }
  } catch (const polyrecur::ConfigError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  }
  return 0;
}
