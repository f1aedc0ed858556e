// Command-line front end. Every subcommand prints one JSON document (or CSV
// where tabular) to --out or stdout; errors go to stderr as JSON. Exit codes:
// 0 success, 1 validation/usage, 2 budget exceeded.

#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "symsum/json_io.hpp"
#include "symsum/symsum.hpp"

namespace {

using namespace symsum;

struct CommonOpts {
  std::uint32_t p = 0;
  std::uint32_t r = 1;
  std::string modulus;
  std::string L = "id";
  std::string L_table;
  std::uint64_t budget = 0;  // 0: per-operation default
  std::string format = "json";
  std::string out;
};

std::vector<std::uint32_t> parse_u32_list(const std::string& s, const char* what) {
  std::vector<std::uint32_t> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      std::size_t pos = 0;
      unsigned long v = std::stoul(item, &pos);
      if (pos != item.size() || v > 0xffffffffull) throw std::invalid_argument(what);
      out.push_back(static_cast<std::uint32_t>(v));
    } catch (const std::exception&) {
      throw Error(errc::validation, std::string("malformed integer list for ") + what);
    }
  }
  if (out.empty()) throw Error(errc::validation, std::string("empty list for ") + what);
  return out;
}

Field make_field(const CommonOpts& o) {
  if (o.p == 0) throw Error(errc::validation, "--p is required");
  if (o.modulus.empty()) return Field::make(o.p, o.r);
  return Field::make(o.p, o.r, parse_u32_list(o.modulus, "--modulus"));
}

LinearMap make_map(const Field& f, const CommonOpts& o) {
  if (!o.L_table.empty()) {
    std::vector<FieldElement> t;
    for (auto v : parse_u32_list(o.L_table, "--L-table")) t.push_back(f.element(v));
    return LinearMap::from_table(f, std::move(t));
  }
  if (o.L == "id") return LinearMap::identity(f);
  if (o.L == "trace") return LinearMap::trace(f);
  throw Error(errc::validation, "--L must be id or trace (or use --L-table)");
}

std::uint64_t budget_or(const CommonOpts& o, std::uint64_t dflt) {
  return o.budget == 0 ? dflt : o.budget;
}

void emit(const std::string& text, const CommonOpts& o) {
  if (o.out.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream f(o.out, std::ios::binary);
  if (!f) throw Error(errc::validation, "cannot open output path " + o.out);
  f << text;
}

void emit_json(Json j, const CommonOpts& o) { emit(j.dump(2) + "\n", o); }

std::string csv_indexed(const char* header, const std::vector<std::string>& cells) {
  std::string out = std::string("index,") + header + "\n";
  for (std::size_t i = 0; i < cells.size(); ++i)
    out += std::to_string(i) + "," + cells[i] + "\n";
  return out;
}

std::vector<std::string> rational_cells(const std::vector<Rational>& v) {
  std::vector<std::string> out;
  for (const auto& r : v) out.push_back(rational_to_string(r));
  return out;
}

void require_json(const CommonOpts& o) {
  if (o.format != "json")
    throw Error(errc::validation, "this subcommand only emits json");
}

void add_common(CLI::App* sub, CommonOpts& o, bool with_L = true) {
  sub->add_option("--p", o.p, "field characteristic (prime)");
  sub->add_option("--r", o.r, "extension degree");
  sub->add_option("--modulus", o.modulus, "modulus coefficients c0,c1,...,cr (low first)");
  if (with_L) {
    sub->add_option("--L", o.L, "post-composed linear map: id or trace");
    sub->add_option("--L-table", o.L_table, "explicit linear map table, q element indices");
  }
  sub->add_option("--budget", o.budget, "work budget override");
  sub->add_option("--format", o.format, "json or csv")->check(CLI::IsMember({"json", "csv"}));
  sub->add_option("--out", o.out, "output path (default stdout)");
}

SymmetricSpec make_spec(const Field& f, const std::vector<std::uint32_t>& ks,
                        const std::string& betas_csv, std::uint64_t n) {
  SymmetricSpec spec;
  spec.ks = ks;
  spec.n = n;
  if (betas_csv.empty()) {
    spec.betas.assign(ks.size(), f.one());
  } else {
    for (auto v : parse_u32_list(betas_csv, "--betas")) spec.betas.push_back(f.element(v));
  }
  spec.validate(f);
  return spec;
}

int run(int argc, char** argv) {
  CLI::App app{"exact exponential sums, value distributions, and balance over GF(p^r)"};
  app.require_subcommand(1);

  // field
  CommonOpts field_o;
  CLI::App* c_field = app.add_subcommand("field", "describe a finite field");
  add_common(c_field, field_o, false);

  // lambda
  CommonOpts lam_o;
  std::uint32_t lam_k = 0;
  std::string lam_ks, lam_betas;
  CLI::App* c_lambda = app.add_subcommand("lambda", "multiplicity-hypercube value histogram");
  add_common(c_lambda, lam_o);
  c_lambda->add_option("--k", lam_k, "degree");
  c_lambda->add_option("--ks", lam_ks, "comma-separated degrees (combination target)");
  c_lambda->add_option("--betas", lam_betas, "element indices weighting --ks");

  // sum
  CommonOpts sum_o;
  std::uint64_t sum_n = 0;
  std::uint32_t sum_k = 0;
  std::string sum_ks, sum_betas, sum_F;
  CLI::App* c_sum = app.add_subcommand("sum", "exact generating-function coefficients");
  add_common(c_sum, sum_o);
  c_sum->add_option("--n", sum_n, "number of variables");
  c_sum->add_option("--k", sum_k, "symmetric degree");
  c_sum->add_option("--ks", sum_ks, "comma-separated symmetric degrees");
  c_sum->add_option("--betas", sum_betas, "element indices weighting --ks");
  c_sum->add_option("--F", sum_F, "perturbation / function in normal-form text");

  // closed-form
  CommonOpts cf_o;
  std::uint64_t cf_n = 0;
  std::uint32_t cf_k = 0;
  CLI::App* c_cf = app.add_subcommand("closed-form", "cyclotomic closed formula for e_{n,k}");
  add_common(c_cf, cf_o);
  c_cf->add_option("--n", cf_n, "number of variables")->required();
  c_cf->add_option("--k", cf_k, "degree")->required();

  // pgf
  CommonOpts pgf_o;
  std::uint64_t pgf_n = 0;
  bool pgf_inf = false;
  std::uint32_t pgf_k = 0;
  std::string pgf_ks, pgf_betas;
  CLI::App* c_pgf = app.add_subcommand("pgf", "value-probability profile of e_{n,k}");
  add_common(c_pgf, pgf_o);
  c_pgf->add_option("--n", pgf_n, "number of variables");
  c_pgf->add_flag("--infinity", pgf_inf, "limit profile instead of finite n");
  c_pgf->add_option("--k", pgf_k, "degree");
  c_pgf->add_option("--ks", pgf_ks, "comma-separated degrees (combination target)");
  c_pgf->add_option("--betas", pgf_betas, "element indices weighting --ks");

  // perturb
  CommonOpts pert_o;
  std::uint64_t pert_n = 0;
  bool pert_inf = false;
  std::uint32_t pert_k = 0;
  std::string pert_F;
  CLI::App* c_pert = app.add_subcommand("perturb", "profile of e_{n,k} + F");
  add_common(c_pert, pert_o);
  c_pert->add_option("--n", pert_n, "number of variables");
  c_pert->add_flag("--infinity", pert_inf, "limit profile instead of finite n");
  c_pert->add_option("--k", pert_k, "degree")->required();
  c_pert->add_option("--F", pert_F, "perturbation in normal-form text")->required();

  // fine
  CommonOpts fine_o;
  std::string fine_ks;
  std::uint32_t fine_kmin = 1, fine_kmax = 0;
  bool fine_p4_on = false, fine_p4_off = false;
  CLI::App* c_fine = app.add_subcommand("fine", "classical distribution properties per degree");
  add_common(c_fine, fine_o, false);
  c_fine->add_option("--ks", fine_ks, "explicit comma-separated degrees");
  c_fine->add_option("--k-min", fine_kmin, "first degree (default 1)");
  c_fine->add_option("--k-max", fine_kmax, "last degree");
  c_fine->add_flag("--with-p4", fine_p4_on,
                   "also compute the degree-kp profile (default only for p in {2,3})");
  c_fine->add_flag("--no-p4", fine_p4_off, "skip the degree-kp profile");

  // smith
  CommonOpts smith_o;
  CLI::App* c_smith = app.add_subcommand("smith", "closed-form limit probabilities at k = p+1");
  add_common(c_smith, smith_o, false);

  // balance
  CommonOpts bal_o;
  std::uint32_t bal_k = 0;
  CLI::App* c_bal = app.add_subcommand("balance", "balance predicate and convolution matrix");
  add_common(c_bal, bal_o, false);
  c_bal->add_option("--k", bal_k, "degree")->required();

  // counterexample
  CommonOpts ce_o;
  std::uint32_t ce_k = 0;
  CLI::App* c_ce = app.add_subcommand("counterexample",
                                      "balanced perturbation of an unbalanced e_{n,k}");
  add_common(c_ce, ce_o, false);
  c_ce->add_option("--k", ce_k, "degree")->required();

  // grid
  CommonOpts grid_o;
  std::uint32_t grid_k = 0;
  CLI::App* c_grid = app.add_subcommand("grid", "render the F_3 value grid as a pixmap");
  add_common(c_grid, grid_o, false);
  c_grid->add_option("--k", grid_k, "degree")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);  // --help and friends
    Json j = json_envelope("error");
    j["error"] = "usage";
    j["message"] = e.what();
    std::cerr << j.dump(2) << "\n";
    return 1;
  }

  if (c_field->parsed()) {
    require_json(field_o);
    Field f = make_field(field_o);
    Json j = json_envelope("field");
    j["field"] = field_to_json(f);
    Json tr = Json::array();
    for (std::uint32_t i = 0; i < f.q(); ++i) tr.push_back(f.trace_int({i}));
    j["trace"] = tr;
    emit_json(j, field_o);
    return 0;
  }

  if (c_lambda->parsed()) {
    Field f = make_field(lam_o);
    LinearMap L = make_map(f, lam_o);
    std::uint64_t budget = budget_or(lam_o, kDefaultHypercubeBudget);
    ValueHistogram h = [&] {
      if (!lam_ks.empty()) {
        auto ks = parse_u32_list(lam_ks, "--ks");
        std::vector<FieldElement> betas;
        if (lam_betas.empty())
          betas.assign(ks.size(), f.one());
        else
          for (auto v : parse_u32_list(lam_betas, "--betas")) betas.push_back(f.element(v));
        return hypercube_histogram_combo(f, ks, betas, L, budget);
      }
      if (lam_k == 0) throw Error(errc::validation, "provide --k or --ks");
      return hypercube_histogram(f, lam_k, L, budget);
    }();
    if (lam_o.format == "csv") {
      std::vector<std::string> cells;
      for (auto c : h.counts) cells.push_back(std::to_string(c));
      emit(csv_indexed("count", cells), lam_o);
    } else {
      Json j = json_envelope("lambda");
      j.update(histogram_to_json(h));
      emit_json(j, lam_o);
    }
    return 0;
  }

  if (c_sum->parsed()) {
    Field f = make_field(sum_o);
    LinearMap L = make_map(f, sum_o);
    std::uint64_t budget = budget_or(sum_o, kDefaultBruteBudget);
    Json target;
    GroupAlgebraElement s(f);
    bool have_k = sum_k != 0 || !sum_ks.empty();
    if (have_k && !sum_F.empty()) {
      if (!sum_ks.empty())
        throw Error(errc::validation, "perturbations take a single --k");
      PolyFunction F = PolyFunction::from_anf_text(f, sum_F, std::nullopt, budget);
      s = perturbation_decompose(f, sum_n, sum_k, F, L, budget);
      target["k"] = sum_k;
      target["F"] = F.has_anf() ? F.anf_text() : "";
    } else if (have_k) {
      auto ks = sum_ks.empty() ? std::vector<std::uint32_t>{sum_k}
                               : parse_u32_list(sum_ks, "--ks");
      SymmetricSpec spec = make_spec(f, ks, sum_betas, sum_n);
      s = brute_sum_symmetric(f, spec, L, budget);
      target["ks"] = spec.ks;
      Json tb = Json::array();
      for (auto b : spec.betas) tb.push_back(b.index);
      target["betas"] = tb;
    } else if (!sum_F.empty()) {
      PolyFunction F = PolyFunction::from_anf_text(f, sum_F, std::nullopt, budget);
      if (sum_n != 0 && sum_n != F.arity())
        throw Error(errc::validation, "--n must match the function arity when --k is absent");
      sum_n = F.arity();
      s = brute_sum(F, L, budget);
      target["F"] = F.has_anf() ? F.anf_text() : "";
    } else {
      throw Error(errc::validation, "provide --k/--ks and/or --F");
    }
    if (sum_o.format == "csv") {
      emit(csv_indexed("count", rational_cells(s.coeffs())), sum_o);
    } else {
      Json j = json_envelope("sum");
      j["field"] = field_to_json(f);
      j["n"] = sum_n;
      j["target"] = target;
      j["L"] = L.name();
      j["coefficients"] = ga_to_json(s);
      emit_json(j, sum_o);
    }
    return 0;
  }

  if (c_cf->parsed()) {
    Field f = make_field(cf_o);
    LinearMap L = make_map(f, cf_o);
    GroupAlgebraElement s =
        closed_formula_sum(f, cf_n, cf_k, L, budget_or(cf_o, kDefaultHypercubeBudget));
    if (cf_o.format == "csv") {
      emit(csv_indexed("count", rational_cells(s.coeffs())), cf_o);
    } else {
      Json j = json_envelope("closed_form");
      j["field"] = field_to_json(f);
      j["n"] = cf_n;
      j["k"] = cf_k;
      j["D"] = period_D(f.p(), cf_k);
      j["L"] = L.name();
      j["coefficients"] = ga_to_json(s);
      emit_json(j, cf_o);
    }
    return 0;
  }

  if (c_pgf->parsed()) {
    Field f = make_field(pgf_o);
    LinearMap L = make_map(f, pgf_o);
    if (pgf_inf == (pgf_n != 0))
      throw Error(errc::validation, "provide exactly one of --n or --infinity");
    ProbabilityProfile prof = [&] {
      if (!pgf_ks.empty()) {
        auto ks = parse_u32_list(pgf_ks, "--ks");
        std::vector<FieldElement> betas;
        if (pgf_betas.empty())
          betas.assign(ks.size(), f.one());
        else
          for (auto v : parse_u32_list(pgf_betas, "--betas")) betas.push_back(f.element(v));
        if (pgf_inf)
          return asymptotic_pgf_combo(f, ks, betas, L,
                                      budget_or(pgf_o, kDefaultHypercubeBudget));
        SymmetricSpec spec{ks, betas, pgf_n};
        spec.validate(f);
        return finite_n_pgf_combo(f, spec, L, budget_or(pgf_o, kDefaultBruteBudget));
      }
      if (pgf_k == 0) throw Error(errc::validation, "provide --k or --ks");
      if (pgf_inf)
        return asymptotic_pgf(f, pgf_k, L, budget_or(pgf_o, kDefaultHypercubeBudget));
      return finite_n_pgf(f, pgf_n, pgf_k, L, budget_or(pgf_o, kDefaultBruteBudget));
    }();
    if (pgf_o.format == "csv") {
      emit(csv_indexed("probability", rational_cells(prof.pgf.coeffs())), pgf_o);
    } else {
      Json j = json_envelope("pgf");
      j.update(profile_to_json(prof));
      emit_json(j, pgf_o);
    }
    return 0;
  }

  if (c_pert->parsed()) {
    Field f = make_field(pert_o);
    LinearMap L = make_map(f, pert_o);
    if (pert_inf == (pert_n != 0))
      throw Error(errc::validation, "provide exactly one of --n or --infinity");
    std::uint64_t bbudget = budget_or(pert_o, kDefaultBruteBudget);
    PolyFunction F = PolyFunction::from_anf_text(f, pert_F, std::nullopt, bbudget);
    ProbabilityProfile prof =
        pert_inf ? perturbed_pgf(f, pert_k, F, L, budget_or(pert_o, kDefaultHypercubeBudget),
                                 bbudget)
                 : finite_n_perturbed_pgf(f, pert_n, pert_k, F, L, bbudget);
    if (pert_o.format == "csv") {
      emit(csv_indexed("probability", rational_cells(prof.pgf.coeffs())), pert_o);
    } else {
      Json j = json_envelope("perturb");
      j.update(profile_to_json(prof));
      emit_json(j, pert_o);
    }
    return 0;
  }

  if (c_fine->parsed()) {
    Field f = make_field(fine_o);
    std::vector<std::uint32_t> ks;
    if (!fine_ks.empty()) {
      ks = parse_u32_list(fine_ks, "--ks");
    } else {
      if (fine_kmax < fine_kmin)
        throw Error(errc::validation, "provide --ks or a --k-min/--k-max range");
      for (std::uint32_t k = fine_kmin; k <= fine_kmax; ++k) ks.push_back(k);
    }
    bool with_p4 = fine_p4_on || (!fine_p4_off && (f.p() == 2 || f.p() == 3));
    FinePropertyReport rep =
        fine_property_report(f, ks, with_p4, budget_or(fine_o, kDefaultHypercubeBudget));
    if (fine_o.format == "csv") {
      std::string out = "k,scaled_prime_power,p1,p2,p3,p4,p5";
      for (std::uint32_t t = 0; t < f.p(); ++t) out += ",prob_" + std::to_string(t);
      out += "\n";
      for (const auto& r : rep.rows) {
        out += std::to_string(r.k) + "," + (r.scaled_prime_power ? "1" : "0") + "," +
               (r.p1 ? "1" : "0") + "," + (r.p2 ? "1" : "0") + "," + (r.p3 ? "1" : "0") + "," +
               (r.p4 ? (*r.p4 ? "1" : "0") : "") + "," + (r.p5 ? "1" : "0");
        for (const auto& c : r.probs) out += "," + rational_to_string(c);
        out += "\n";
      }
      emit(out, fine_o);
    } else {
      Json j = json_envelope("fine");
      j.update(fine_report_to_json(rep));
      emit_json(j, fine_o);
    }
    return 0;
  }

  if (c_smith->parsed()) {
    if (smith_o.p == 0) throw Error(errc::validation, "--p is required");
    std::vector<Rational> vals;
    for (std::uint32_t t = 0; t < smith_o.p; ++t) vals.push_back(smith_probability(smith_o.p, t));
    if (smith_o.format == "csv") {
      std::string out = "t,probability\n";
      for (std::uint32_t t = 0; t < smith_o.p; ++t)
        out += std::to_string(t) + "," + rational_to_string(vals[t]) + "\n";
      emit(out, smith_o);
    } else {
      Json j = json_envelope("smith");
      j["p"] = smith_o.p;
      j["k"] = smith_o.p + 1;
      j["values"] = rationals_to_json(vals);
      emit_json(j, smith_o);
    }
    return 0;
  }

  if (c_bal->parsed()) {
    require_json(bal_o);
    Field f = make_field(bal_o);
    ProbabilityProfile prof =
        asymptotic_pgf(f, bal_k, LinearMap::identity(f), budget_or(bal_o, kDefaultHypercubeBudget));
    ConvolutionMatrix M = build_matrix(prof);
    Json j = json_envelope("balance");
    j["field"] = field_to_json(f);
    j["k"] = bal_k;
    j["coefficients"] = ga_to_json(prof.pgf);
    j["balanced"] = is_asymptotically_balanced(prof);
    j["det"] = rational_to_string(determinant(M));
    j["matrix"] = matrix_to_json(M);
    j["nullspace"] = rational_nullspace(M);
    emit_json(j, bal_o);
    return 0;
  }

  if (c_ce->parsed()) {
    require_json(ce_o);
    Field f = make_field(ce_o);
    CounterexampleSearch res =
        find_counterexample(f, ce_k, budget_or(ce_o, kDefaultHypercubeBudget),
                            budget_or(ce_o, kDefaultBruteBudget));
    Json j = json_envelope("counterexample");
    j["field"] = field_to_json(f);
    j["k"] = ce_k;
    j["found"] = res.found;
    j["det"] = rational_to_string(res.det);
    j["limit"] = ga_to_json(res.limit.pgf);
    if (res.found) j["certificate"] = certificate_to_json(*res.certificate);
    emit_json(j, ce_o);
    return 0;
  }

  if (c_grid->parsed()) {
    require_json(grid_o);
    if (grid_o.out.empty()) throw Error(errc::validation, "grid requires --out for the pixmap");
    Field f = make_field(grid_o);
    GridImage img = grid_render(f, grid_k);
    {
      std::ofstream ppm(grid_o.out, std::ios::binary);
      if (!ppm) throw Error(errc::validation, "cannot open output path " + grid_o.out);
      ppm << ppm_bytes(img);
    }
    Json j = json_envelope("grid");
    j["field"] = field_to_json(f);
    j["k"] = img.k;
    j["D"] = img.D;
    Json counts = Json::array();
    for (auto c : img.counts) counts.push_back(std::to_string(c));
    j["counts"] = counts;
    Json palette;
    palette["0"] = {0, 0, 255};
    palette["1"] = {255, 0, 0};
    palette["2"] = {0, 255, 0};
    j["palette"] = palette;
    j["image"] = grid_o.out;
    {
      std::ofstream side(grid_o.out + ".json", std::ios::binary);
      if (!side) throw Error(errc::validation, "cannot open sidecar path " + grid_o.out + ".json");
      side << j.dump(2) << "\n";
    }
    std::cout << j.dump(2) << "\n";
    return 0;
  }

  throw Error(errc::validation, "no subcommand selected");
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return run(argc, argv);
  } catch (const symsum::Error& e) {
    std::cerr << symsum::error_to_json(e).dump(2) << "\n";
    return e.code() == symsum::errc::budget_exceeded ? 2 : 1;
  } catch (const std::exception& e) {
    symsum::Json j = symsum::json_envelope("error");
    j["error"] = "internal";
    j["message"] = e.what();
    std::cerr << j.dump(2) << "\n";
    return 1;
  }
}
