#include "rectlab/cli.hpp"

#include <algorithm>
#include <cstdlib>
#include <optional>
#include <sstream>

#include <CLI11.hpp>

#include "rectlab/constructions.hpp"
#include "rectlab/error.hpp"
#include "rectlab/io.hpp"
#include "rectlab/maximal.hpp"
#include "rectlab/orlicz.hpp"
#include "rectlab/poset.hpp"

namespace rectlab::cli {

namespace {

using io::Json;

// Raised by handlers once a report is written but some asserted check failed.
struct CheckFailed {
  std::string what;
};

Json rect_json(const DyadicRectangle& r) { return Json(r.exponents()); }

Json rects_json(const std::vector<DyadicRectangle>& rects) {
  Json out = Json::array();
  for (const auto& r : rects) out.push_back(rect_json(r));
  return out;
}

void emit(const Json& doc, const std::string& path, std::ostream& out) {
  if (path.empty() || path == "-") {
    out << doc.dump(2) << '\n';
  } else {
    io::write_json_file(path, doc);
  }
}

Rational parse_scalar(const std::string& text) {
  if (text.find('^') != std::string::npos) return DyadicRational::parse(text).to_rational();
  return io::parse_rational(text);
}

CounterexampleBundle make_bundle(const std::string& construction, std::uint32_t n, std::uint32_t k,
                                 const Limits& limits) {
  if (construction == "lemma1") return lemma1_bundle(n, k, limits);
  if (construction == "rademacher") return rademacher_bundle(default_chain(n - 1, k), k + 1, limits);
  throw InvalidArgument("unknown construction '" + construction + "', want lemma1 or rademacher");
}

Json constants_row(const CounterexampleBundle& b) {
  return {{"k", b.k},
          {"claimed_c", io::rational_string(b.claimed_c)},
          {"measured_c", b.measured.c ? Json(io::rational_string(*b.measured.c)) : Json(nullptr)},
          {"claimed_c_prime", io::rational_string(b.claimed_c_prime)},
          {"measured_c_prime", b.measured.c_prime.to_string()}};
}

void constants_csv(const std::vector<CounterexampleBundle>& bundles, std::ostream& os) {
  os << "k,claimed_c,measured_c,claimed_c_prime,measured_c_prime\n";
  for (const auto& b : bundles) {
    os << b.k << ',' << io::rational_string(b.claimed_c) << ','
       << (b.measured.c ? io::rational_string(*b.measured.c) : std::string()) << ','
       << io::rational_string(b.claimed_c_prime) << ',' << b.measured.c_prime.to_string() << '\n';
  }
}

Json sweep_json(const SweepReport& s) {
  Json entries = Json::array();
  for (const auto& e : s.entries) {
    entries.push_back({{"k", e.k},
                       {"valid", e.valid},
                       {"ratio_lo", e.valid ? e.ratio.lower_string() : ""},
                       {"ratio_hi", e.valid ? e.ratio.upper_string() : ""}});
  }
  return {{"entries", entries},
          {"strictly_increasing", s.strictly_increasing},
          {"doubled", s.doubled},
          {"verdict", s.diverging ? "diverging" : "not diverging"},
          {"note", s.note}};
}

struct SweepArgs {
  std::string construction = "lemma1";
  std::uint32_t n = 2;
  std::uint32_t kmin = 1;
  std::uint32_t kmax = 5;
  std::string phi = "p:1";
  std::string C = "2";
  std::string format = "csv";
};

void add_sweep_flags(CLI::App* cmd, SweepArgs& a) {
  cmd->add_option("--construction", a.construction, "lemma1 or rademacher")
      ->check(CLI::IsMember({"lemma1", "rademacher"}));
  cmd->add_option("--n", a.n, "dimension")->check(CLI::Range(2, 8));
  cmd->add_option("--kmin", a.kmin, "first k");
  cmd->add_option("--kmax", a.kmax, "last k");
  cmd->add_option("--phi", a.phi, "comparison Orlicz function, p:P or d:D");
  cmd->add_option("--C", a.C, "constant C in Phi(C f)");
  cmd->add_option("--format", a.format)->check(CLI::IsMember({"csv", "json"}));
}

std::vector<CounterexampleBundle> build_bundles(const SweepArgs& a, const Limits& limits) {
  if (a.kmin > a.kmax) throw InvalidArgument("kmin > kmax");
  std::vector<CounterexampleBundle> bundles;
  for (std::uint32_t k = a.kmin; k <= a.kmax; ++k) bundles.push_back(make_bundle(a.construction, a.n, k, limits));
  return bundles;
}

int verify_prop_stokn(const SweepArgs& a, const Limits& limits, std::ostream& out, std::ostream& err) {
  const auto phi = OrliczFn::parse(a.phi);
  const Rational C = parse_scalar(a.C);
  const auto bundles = build_bundles(a, limits);
  const auto sweep = divergence_sweep(bundles, phi, C);

  bool all_pass = sweep.diverging;
  std::vector<KappaReport> kappas;
  for (const auto& b : bundles) {
    kappas.push_back(kappa_check(b));
    all_pass = all_pass && kappas.back().holds;
  }

  if (a.format == "csv") {
    out << "k,|Θ|,|Y|,minM,lhs,rhs_lo,rhs_hi,ratio_lo,ratio_hi,verdict\n";
    for (std::size_t i = 0; i < bundles.size(); ++i) {
      const auto& b = bundles[i];
      const auto& kr = kappas[i];
      const auto& se = sweep.entries[i];
      const bool sides = kr.c_prime_used.has_value();
      out << b.k << ',' << b.measured.theta_measure.to_string() << ',' << b.measured.y_measure.to_string() << ','
          << b.measured.min_maximal.to_string() << ',' << (sides ? kr.level_measure.to_string() : "") << ','
          << (sides ? kr.rhs.lower_string() : "") << ',' << (sides ? kr.rhs.upper_string() : "") << ','
          << (se.valid ? se.ratio.lower_string() : "") << ',' << (se.valid ? se.ratio.upper_string() : "") << ','
          << (kr.holds ? "pass" : "fail") << '\n';
    }
    err << "# constants (claimed vs measured)\n";
    constants_csv(bundles, err);
    err << "# divergence: " << (sweep.diverging ? "diverging" : "not diverging") << " (" << sweep.note << ")\n";
  } else {
    Json rows = Json::array();
    Json constants = Json::array();
    for (std::size_t i = 0; i < bundles.size(); ++i) {
      const auto& b = bundles[i];
      const auto& kr = kappas[i];
      Json row = {{"k", b.k},
                  {"theta_measure", b.measured.theta_measure.to_string()},
                  {"y_measure", b.measured.y_measure.to_string()},
                  {"min_maximal", b.measured.min_maximal.to_string()},
                  {"hypotheses", {{"contained", kr.hypotheses.contained},
                                  {"measure_bound", kr.hypotheses.measure_bound},
                                  {"maximal_bound", kr.hypotheses.maximal_bound}}},
                  {"verdict", kr.holds ? "pass" : "fail"}};
      if (kr.c_prime_used) {
        row["c_prime_used"] = kr.c_prime_used->to_string();
        row["lhs"] = kr.level_measure.to_string();
        row["rhs_lo"] = kr.rhs.lower_string();
        row["rhs_hi"] = kr.rhs.upper_string();
      }
      if (!kr.note.empty()) row["note"] = kr.note;
      rows.push_back(std::move(row));
      constants.push_back(constants_row(b));
    }
    Json doc = {{"command", "verify prop-stokn"},
                {"construction", a.construction},
                {"n", a.n},
                {"d", a.n - 1},
                {"phi", phi.to_string()},
                {"C", io::rational_string(C)},
                {"convention", bundles.front().convention},
                {"checks", {"hypotheses (i)-(iii), exact on the grid",
                            "|{M f_k >= 1}| >= c c' / d^d * integral of Phi_d(f_k), interval-certified",
                            "Phi_d / Phi(C .) ratio divergence, finite-sweep proxy"}},
                {"rows", rows},
                {"constants", constants},
                {"divergence", sweep_json(sweep)},
                {"status", all_pass ? "pass" : "fail"}};
    out << doc.dump(2) << '\n';
  }
  if (!all_pass) throw CheckFailed{"prop-stokn verification failed"};
  return kExitOk;
}

int run_sweep(const SweepArgs& a, const std::string& quantity, const Limits& limits, std::ostream& out,
              std::ostream& err) {
  if (quantity == "width") {
    const auto n = a.n;
    const auto report = weak11_verdict(
        [&](std::uint32_t k) { return hyperbolic_family(n, k, DyadicRational::pow2(-static_cast<long>(n * k)), limits); },
        a.kmin, a.kmax);
    const char* verdict = report.verdict == WidthTrend::growing ? "growing" : "bounded";
    if (a.format == "csv") {
      out << "k,width\n";
      for (const auto& [k, w] : report.widths) out << k << ',' << w << '\n';
      err << "# verdict: " << verdict << " (" << report.note << ")\n";
    } else {
      Json widths = Json::array();
      for (const auto& [k, w] : report.widths) widths.push_back({{"k", k}, {"width", w}});
      out << Json{{"command", "sweep width"}, {"family", "hyperbolic"}, {"n", n}, {"widths", widths},
                  {"verdict", verdict}, {"note", report.note}}.dump(2)
          << '\n';
    }
    return kExitOk;
  }

  const auto phi = OrliczFn::parse(a.phi);
  const Rational C = parse_scalar(a.C);
  const auto bundles = build_bundles(a, limits);
  const auto sweep = divergence_sweep(bundles, phi, C);
  if (a.format == "csv") {
    out << "k,ratio_lo,ratio_hi\n";
    for (const auto& e : sweep.entries) {
      out << e.k << ',' << (e.valid ? e.ratio.lower_string() : "") << ',' << (e.valid ? e.ratio.upper_string() : "")
          << '\n';
    }
    err << "# constants (claimed vs measured)\n";
    constants_csv(bundles, err);
    err << "# verdict: " << (sweep.diverging ? "diverging" : "not diverging") << " (" << sweep.note << ")\n";
  } else {
    Json constants = Json::array();
    for (const auto& b : bundles) constants.push_back(constants_row(b));
    out << Json{{"command", "sweep divergence"}, {"construction", a.construction}, {"n", a.n},
                {"phi", phi.to_string()}, {"C", io::rational_string(C)}, {"convention", bundles.front().convention},
                {"constants", constants}, {"divergence", sweep_json(sweep)}}.dump(2)
        << '\n';
  }
  if (!sweep.diverging) throw CheckFailed{"ratio sweep is not diverging"};
  return kExitOk;
}

Json bundle_with_checks(const CounterexampleBundle& b) {
  Json doc = io::to_json(b);
  const auto h = check_hypotheses(b);
  doc["hypotheses"] = {{"contained", h.contained},
                       {"measure_bound", h.measure_bound},
                       {"maximal_bound", h.maximal_bound},
                       {"required_y", io::rational_string(h.required_y)},
                       {"required_min", io::rational_string(h.required_min)}};
  return doc;
}

int oracle(const std::string& path, const Limits& limits, std::ostream& out) {
  const auto bundle = io::bundle_from_json(io::read_json_file(path), limits);
  const auto fresh = measure_bundle(bundle, true);
  const Json stored = io::to_json(bundle.measured);
  const Json recomputed = io::to_json(fresh);
  Json diff = Json::object();
  for (const auto& [key, value] : stored.items()) {
    if (recomputed[key] != value) diff[key] = {{"stored", value}, {"recomputed", recomputed[key]}};
  }
  const bool ok = diff.empty();
  out << Json{{"command", "oracle"},
              {"bundle", path},
              {"method", "brute-force maximal function, exact"},
              {"constants", {{"claimed_c", io::rational_string(bundle.claimed_c)},
                             {"claimed_c_prime", io::rational_string(bundle.claimed_c_prime)},
                             {"stored", stored},
                             {"recomputed", recomputed}}},
              {"differences", diff},
              {"status", ok ? "pass" : "fail"}}
             .dump(2)
      << '\n';
  if (!ok) throw CheckFailed{"stored constants differ from the brute-force recomputation"};
  return kExitOk;
}

std::string error_kind(const std::exception& e) {
  if (dynamic_cast<const SchemaError*>(&e)) return "schema";
  if (dynamic_cast<const CapExceeded*>(&e)) return "cap_exceeded";
  if (dynamic_cast<const DimensionMismatch*>(&e)) return "dimension_mismatch";
  if (dynamic_cast<const ResolutionError*>(&e)) return "resolution";
  if (dynamic_cast<const OverflowError*>(&e)) return "overflow";
  if (dynamic_cast<const InvalidArgument*>(&e)) return "invalid_argument";
  return "error";
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Dyadic rectangle bases: constructions, maximal functions and weak-type checks", "rectlab"};
  app.require_subcommand(1);

  std::uint64_t max_cells = kDefaultMaxCells;
  std::uint32_t max_exp = kDefaultMaxExponent;
  app.add_option("--max-cells", max_cells, "grid cell cap")->envname("RECTLAB_MAX_CELLS");
  app.add_option("--max-exp", max_exp, "rectangle exponent cap");

  // construct
  auto* construct = app.add_subcommand("construct", "build a family, chain reduction or bundle");
  construct->require_subcommand(1);
  std::string output;
  std::uint32_t n = 2, k = 2;
  std::optional<std::uint32_t> p;
  std::string alpha, chain_path, family_path, bundle_path;

  auto* c_hyper = construct->add_subcommand("hyperbolic", "hyperbolic family");
  c_hyper->add_option("--n", n)->required();
  c_hyper->add_option("--k", k)->required();
  c_hyper->add_option("--alpha", alpha, "power of two, default 2^-nk");
  auto* c_hat = construct->add_subcommand("hat", "intersections generated by a strict chain");
  c_hat->add_option("--chain", chain_path)->required();
  auto* c_rad = construct->add_subcommand("rademacher", "Rademacher bundle");
  c_rad->add_option("--chain", chain_path, "strict chain; default m = k+1-j on every axis");
  c_rad->add_option("--n", n);
  c_rad->add_option("--k", k);
  c_rad->add_option("--p", p, "last-axis exponent, default k+1");
  auto* c_soria = construct->add_subcommand("soria", "strict chain from 2k+1 incomparable planar rectangles");
  c_soria->add_option("--family", family_path)->required();
  auto* c_cyl = construct->add_subcommand("cylinder", "product with [0,1]");
  auto* cyl_src = c_cyl->add_option_group("source");
  cyl_src->add_option("--family", family_path);
  cyl_src->add_option("--bundle", bundle_path);
  cyl_src->require_option(1);
  auto* c_lemma1 = construct->add_subcommand("lemma1", "intersection / union bundle of the hyperbolic family");
  c_lemma1->add_option("--n", n)->required();
  c_lemma1->add_option("--k", k)->required();
  for (auto* sub : construct->get_subcommands({})) sub->add_option("-o,--output", output, "output file, default stdout");

  // width
  auto* width_cmd = app.add_subcommand("width", "poset width, chain cover and property (C)");
  std::vector<std::size_t> plane;
  bool property_c = false;
  std::size_t kmax_c = 8;
  width_cmd->add_option("--family", family_path)->required();
  width_cmd->add_option("--plane", plane, "two 1-based axes")->expected(2);
  width_cmd->add_flag("--property-c", property_c);
  width_cmd->add_option("--kmax", kmax_c);

  // maximal
  auto* maximal_cmd = app.add_subcommand("maximal", "discrete maximal function");
  std::string function_path;
  bool brute = false;
  maximal_cmd->add_option("--family", family_path)->required();
  maximal_cmd->add_option("--function", function_path)->required();
  maximal_cmd->add_flag("--brute-force", brute);
  maximal_cmd->add_option("-o,--output", output);

  // verify
  auto* verify = app.add_subcommand("verify", "verification harnesses");
  verify->require_subcommand(1);
  SweepArgs sweep_args;
  auto* v_prop = verify->add_subcommand("prop-stokn", "hypotheses, level-set bound and ratio divergence per k");
  add_sweep_flags(v_prop, sweep_args);
  auto* v_guzman = verify->add_subcommand("guzman", "single-instance L log^{n-2} L check");
  std::string lambda = "1", mode = "prop1";
  v_guzman->add_option("--family", family_path)->required();
  v_guzman->add_option("--function", function_path)->required();
  v_guzman->add_option("--lambda", lambda);
  v_guzman->add_option("--mode", mode)->check(CLI::IsMember({"prop1", "prop2"}));
  v_guzman->add_option("--kmax", kmax_c, "property (C) bound for prop2");

  // sweep
  auto* sweep_cmd = app.add_subcommand("sweep", "per-k sweeps");
  std::string quantity = "divergence";
  add_sweep_flags(sweep_cmd, sweep_args);
  sweep_cmd->add_option("--quantity", quantity)->check(CLI::IsMember({"divergence", "width"}));

  // oracle
  auto* oracle_cmd = app.add_subcommand("oracle", "recompute a bundle's constants by brute force");
  oracle_cmd->add_option("--bundle", bundle_path)->required();

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    return app.exit(e, out, err) == 0 ? kExitOk : kExitError;
  }

  const Limits limits{max_exp, max_cells};
  try {
    if (construct->parsed()) {
      if (c_hyper->parsed()) {
        const auto a = alpha.empty() ? DyadicRational::pow2(-static_cast<long>(n) * k) : DyadicRational::parse(alpha);
        emit(io::to_json(hyperbolic_family(n, k, a, limits)), output, out);
      } else if (c_hat->parsed()) {
        emit(io::to_json(hat_family(io::chain_from_json(io::read_json_file(chain_path), limits))), output, out);
      } else if (c_rad->parsed()) {
        const auto chain =
            chain_path.empty() ? default_chain(n - 1, k) : io::chain_from_json(io::read_json_file(chain_path), limits);
        emit(bundle_with_checks(rademacher_bundle(chain, p.value_or(chain.top() + 1), limits)), output, out);
      } else if (c_soria->parsed()) {
        const auto reduction = soria_chain(io::family_from_json(io::read_json_file(family_path), limits));
        Json certs = Json::array();
        for (const auto& c : reduction.certificates) {
          certs.push_back({{"j1", c.j1},
                           {"j2", c.j2},
                           {"intersection", rect_json(c.intersection)},
                           {"closed_form", rect_json(c.closed_form)},
                           {"member_intersection", rect_json(c.member_intersection)},
                           {"match", c.intersection == c.closed_form && c.closed_form == c.member_intersection}});
        }
        emit({{"chain", io::to_json(reduction.chain)},
              {"hat_family", io::to_json(hat_family(reduction.chain))},
              {"certificates", certs}},
             output, out);
      } else if (c_cyl->parsed()) {
        if (!family_path.empty()) {
          emit(io::to_json(cylinder_family(io::family_from_json(io::read_json_file(family_path), limits))), output,
               out);
        } else {
          const auto base = io::bundle_from_json(io::read_json_file(bundle_path), limits);
          emit(bundle_with_checks(cylinder_bundle(base)), output, out);
        }
      } else if (c_lemma1->parsed()) {
        emit(bundle_with_checks(lemma1_bundle(n, k, limits)), output, out);
      }
      return kExitOk;
    }

    if (width_cmd->parsed()) {
      const auto family = io::family_from_json(io::read_json_file(family_path), limits);
      const auto w = width(family);
      Json chains = Json::array();
      for (const auto& c : w.chains) chains.push_back(rects_json(c));
      Json doc = {{"dim", family.dim()},
                  {"size", family.size()},
                  {"width", w.width},
                  {"is_chain", is_chain(family)},
                  {"antichain", rects_json(w.antichain)},
                  {"chain_cover", chains},
                  {"dilworth_certified", w.antichain.size() == w.chains.size()}};
      std::size_t a0 = family.dim() >= 2 ? family.dim() - 2 : 0, a1 = family.dim() >= 2 ? family.dim() - 1 : 0;
      if (!plane.empty()) {
        if (plane[0] == 0 || plane[1] == 0) throw InvalidArgument("--plane axes are 1-based");
        a0 = plane[0] - 1;
        a1 = plane[1] - 1;
        const auto projected = project(family, a0, a1);
        const auto pw = width(projected);
        doc["projection"] = {{"plane", plane},
                             {"rects", io::to_json(projected)["rects"]},
                             {"width", pw.width},
                             {"is_chain", is_chain(projected)}};
      }
      bool ok = true;
      if (property_c) {
        const auto c = property_c_check(family, a0, a1, kmax_c);
        doc["property_c"] = {{"plane", {a0 + 1, a1 + 1}},
                             {"kmax", kmax_c},
                             {"required_k", c.required_k},
                             {"holds", c.holds},
                             {"witness", rects_json(c.witness)}};
        ok = c.holds;
      }
      out << doc.dump(2) << '\n';
      if (!ok) throw CheckFailed{"property (C) fails within kmax"};
      return kExitOk;
    }

    if (maximal_cmd->parsed()) {
      const auto family = io::family_from_json(io::read_json_file(family_path), limits);
      const auto f = io::gridfn_from_json(io::read_json_file(function_path), limits);
      const auto m = brute ? maximal_function_bruteforce(f, family) : maximal_function(f, family);
      emit(io::to_json(m), output, out);
      return kExitOk;
    }

    if (verify->parsed()) {
      if (v_prop->parsed()) return verify_prop_stokn(sweep_args, limits, out, err);
      const auto family = io::family_from_json(io::read_json_file(family_path), limits);
      const auto f = io::gridfn_from_json(io::read_json_file(function_path), limits);
      const auto r = guzman_instance_check(family, f, DyadicRational::parse(lambda),
                                           mode == "prop1" ? GuzmanMode::prop1 : GuzmanMode::prop2, kmax_c);
      out << Json{{"command", "verify guzman"},
                  {"mode", mode},
                  {"hypotheses_met", r.hypotheses_met},
                  {"hypotheses", r.hypothesis_detail},
                  {"lhs", r.level_measure.to_string()},
                  {"constant", r.constant.to_string()},
                  {"integral", r.integral.to_string()},
                  {"rhs_lo", r.rhs.lower_string()},
                  {"rhs_hi", r.rhs.upper_string()},
                  {"certification", "exact level measure, interval-certified right-hand side"},
                  {"status", r.holds ? "pass" : "fail"}}
                 .dump(2)
          << '\n';
      if (!r.holds) throw CheckFailed{r.hypotheses_met ? "instance inequality fails" : "hypotheses not met"};
      return kExitOk;
    }

    if (sweep_cmd->parsed()) return run_sweep(sweep_args, quantity, limits, out, err);
    if (oracle_cmd->parsed()) return oracle(bundle_path, limits, out);
  } catch (const CheckFailed& e) {
    err << Json{{"status", "fail"}, {"message", e.what}}.dump() << '\n';
    return kExitCheckFailed;
  } catch (const Error& e) {
    err << Json{{"status", "error"}, {"kind", error_kind(e)}, {"message", e.what()}}.dump() << '\n';
    return kExitError;
  } catch (const std::exception& e) {
    err << Json{{"status", "error"}, {"kind", "internal"}, {"message", e.what()}}.dump() << '\n';
    return kExitError;
  }
  return kExitError;
}

}  // namespace rectlab::cli
