#include "ltf/cli.hpp"

#include "ltf/anticonc.hpp"
#include "ltf/core.hpp"
#include "ltf/fourier.hpp"
#include "ltf/io.hpp"
#include "ltf/junta.hpp"
#include "ltf/lp_repr.hpp"
#include "ltf/verify.hpp"
#include "ltf/weight_approx.hpp"

#include "CLI11.hpp"

#include <algorithm>
#include <cstdint>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

namespace ltf {

namespace {

struct LoadedFn {
  std::optional<Ltf> f;
  std::optional<TruthTable> t;
  int n() const { return f ? f->n() : t->n(); }
  BoolFn fn() const { return f ? BoolFn(*f) : BoolFn(*t); }
};

LoadedFn load_fn(const std::string& path) {
  json j = read_json_file(path);
  LoadedFn lf;
  if (j.is_object() && j.contains("weights"))
    lf.f = ltf_from_json(j);
  else if (j.is_object() && j.contains("bits_hex"))
    lf.t = table_from_json(j);
  else
    throw error("bad_file", path + ": expected an ltf or truth-table object");
  return lf;
}

Ltf load_ltf(const std::string& path) {
  LoadedFn lf = load_fn(path);
  if (!lf.f)
    throw error("bad_file", path + ": this command needs weights, not a bare table");
  return *lf.f;
}

TruthTable as_table(const LoadedFn& lf, int cap) {
  return lf.t ? *lf.t : truth_table(*lf.f, cap);
}

InputDistribution load_dist(const std::string& spec, int n) {
  if (spec.empty() || spec == "uniform") return InputDistribution::uniform(n);
  InputDistribution d = distribution_from_json(read_json_file(spec));
  if (d.n() != n)
    throw error("bad_distribution", "distribution arity " + std::to_string(d.n()) +
                                        " does not match the function arity " +
                                        std::to_string(n));
  return d;
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (true) {
    std::size_t pos = s.find(sep, start);
    out.push_back(s.substr(start, pos - start));
    if (pos == std::string::npos) break;
    start = pos + 1;
  }
  return out;
}

std::vector<rat> parse_rat_list(const std::string& s) {
  std::vector<rat> out;
  for (const std::string& part : split(s, ',')) out.push_back(parse_rat(part));
  return out;
}

long parse_long(const std::string& s, const std::string& what) {
  try {
    std::size_t used = 0;
    long v = std::stol(s, &used);
    if (used != s.size()) throw std::invalid_argument(what);
    return v;
  } catch (const std::exception&) {
    throw error("bad_" + what, "cannot parse " + what + ": '" + s + "'");
  }
}

void apply_constants(const std::string& s, PipelineConfig& cfg) {
  if (s.empty()) return;
  for (const std::string& part : split(s, ',')) {
    std::size_t eq = part.find('=');
    if (eq == std::string::npos)
      throw error("bad_constants", "expected key=value, got '" + part + "'");
    std::string key = part.substr(0, eq);
    double v = to_double(parse_rat(part.substr(eq + 1)));
    if (key == "L_c")
      cfg.L_c = v;
    else if (key == "K_c")
      cfg.K_c = v;
    else if (key == "R_c")
      cfg.R_c = v;
    else
      throw error("bad_constants", "unknown constant '" + key + "'");
  }
}

std::string jtext(const json& j) { return j.dump(2) + "\n"; }

void emit(std::ostream& out, const std::string& out_path, const std::string& text) {
  if (out_path.empty())
    out << text;
  else
    write_text_file(out_path, text);
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out,
            std::ostream& err) {
  CLI::App app{"exact toolkit for linear threshold functions"};
  app.name("ltf");
  app.require_subcommand(1);
  app.set_config("--config", "",
                 "toml file; subcommand options live in a [pipeline] etc. "
                 "section; flags override");
  int rc = 0;

  // ltf eval ----------------------------------------------------------------
  auto* c_eval = app.add_subcommand("eval", "evaluate an ltf at one point");
  struct {
    std::string in, out;
    std::uint64_t point = 0;
  } ev;
  c_eval->add_option("--in", ev.in, "ltf json file")->required();
  c_eval->add_option("--point", ev.point,
                     "point index; bit i gives x_i, 0 is -1")->required();
  c_eval->add_option("--out", ev.out, "write the report here instead of stdout");
  c_eval->callback([&] {
    Ltf f = load_ltf(ev.in);
    if (f.n() > 63) throw error("cap", "point evaluation needs arity <= 63");
    if (ev.point >> f.n())
      throw error("bad_point", "point index has bits beyond the arity");
    rat a = f.affine_value(ev.point);
    json j;
    j["n"] = f.n();
    j["point"] = ev.point;
    j["value"] = f.eval(ev.point);
    j["affine"] = format_rat(a);
    j["affine_decimal"] = to_double(a);
    emit(out, ev.out, jtext(j));
  });

  // ltf table ---------------------------------------------------------------
  auto* c_table = app.add_subcommand("table", "enumerate an ltf into a truth table");
  struct {
    std::string in, out;
    int cap = kDefaultEnumCap;
  } tb;
  c_table->add_option("--in", tb.in, "ltf json file")->required();
  c_table->add_option("--cap-enum", tb.cap, "enumeration arity cap");
  c_table->add_option("--out", tb.out, "write the table here instead of stdout");
  c_table->callback([&] {
    emit(out, tb.out, jtext(table_to_json(truth_table(load_ltf(tb.in), tb.cap))));
  });

  // ltf fourier ---------------------------------------------------------------
  auto* c_fourier = app.add_subcommand(
      "fourier", "spectrum csv, influences, margins, or the critical index");
  struct {
    std::string in, out, margins, critical;
    bool influences = false;
    int cap = kDefaultEnumCap;
  } fo;
  c_fourier->add_option("--in", fo.in, "ltf or truth-table json file")->required();
  c_fourier->add_option("--out", fo.out, "write the report here instead of stdout");
  c_fourier->add_option("--cap-enum", fo.cap, "enumeration arity cap");
  auto* fo_inf = c_fourier->add_flag("--influences", fo.influences,
                                     "influence profile json instead of the spectrum");
  auto* fo_marg = c_fourier->add_option(
      "--margins", fo.margins, "margin statistics json at this tau");
  auto* fo_crit = c_fourier->add_option(
      "--critical", fo.critical, "critical index json at this tau");
  fo_inf->excludes(fo_marg)->excludes(fo_crit);
  fo_marg->excludes(fo_crit);
  c_fourier->callback([&] {
    LoadedFn lf = load_fn(fo.in);
    if (fo.influences) {
      emit(out, fo.out, jtext(influence_to_json(influences(as_table(lf, fo.cap), fo.cap))));
      return;
    }
    if (!fo.margins.empty() || !fo.critical.empty()) {
      if (!lf.f)
        throw error("bad_file", fo.in + ": margins and the critical index need weights");
      if (!fo.margins.empty()) {
        emit(out, fo.out,
             jtext(margin_to_json(margin_stats(*lf.f, parse_rat(fo.margins), fo.cap))));
      } else {
        emit(out, fo.out,
             jtext(critical_index_to_json(critical_index(*lf.f, parse_rat(fo.critical)))));
      }
      return;
    }
    emit(out, fo.out, spectrum_csv(wht(as_table(lf, fo.cap), fo.cap)));
  });

  // ltf junta -----------------------------------------------------------------
  auto* c_junta = app.add_subcommand("junta", "approximate an ltf by a small junta");
  struct {
    std::string in, out, eps, kappa_sq;
    std::uint64_t seed = 0;
    int budget = 32;
    int cap = kDefaultEnumCap;
  } ju;
  c_junta->add_option("--in", ju.in, "ltf json file")->required();
  c_junta->add_option("--eps", ju.eps, "distance target")->required();
  c_junta->add_option("--seed", ju.seed, "rng seed for the sampled tail draws");
  c_junta->add_option("--budget", ju.budget, "sampled tail draws to try");
  c_junta->add_option("--kappa-sq", ju.kappa_sq, "head/tail split level override");
  c_junta->add_option("--cap-enum", ju.cap, "enumeration arity cap");
  c_junta->add_option("--out", ju.out, "write the report here instead of stdout");
  c_junta->callback([&] {
    Ltf f = load_ltf(ju.in);
    Rng rng(ju.seed);
    std::optional<rat> kappa;
    if (!ju.kappa_sq.empty()) kappa = parse_rat(ju.kappa_sq);
    JuntaApproximator a =
        theorem1_pipeline(f, parse_rat(ju.eps), rng, kappa, ju.budget, ju.cap);
    emit(out, ju.out, jtext(junta_report_to_json(a, ju.seed)));
    if (!a.met_target) rc = 2;
  });

  // ltf anticonc ----------------------------------------------------------------
  auto* c_anti = app.add_subcommand(
      "anticonc", "anti-concentration of a weight vector: levy mass, profile, "
                  "trend probe, binomial bound, gaussian band");
  struct {
    std::string in, out, weights, dist, r, profile, probe, band;
    bool erdos = false;
    int cap = kDefaultEnumCap;
  } an;
  auto* an_in = c_anti->add_option("--in", an.in, "ltf json file; its weights are used");
  auto* an_w = c_anti->add_option("--weights", an.weights, "inline weights a,b,c,...");
  an_in->excludes(an_w);
  c_anti->add_option("--dist", an.dist, "uniform (default) or a distribution json file");
  c_anti->add_option("--r", an.r, "window radius");
  auto* an_prof = c_anti->add_option("--profile", an.profile,
                                     "csv of p_r over these radii r1,r2,...");
  auto* an_probe = c_anti->add_option(
      "--probe", an.probe, "csv of the k^{3/2} trend for the 1..k family, k in LO:HI");
  auto* an_erdos = c_anti->add_flag("--erdos", an.erdos,
                                    "check p_r against the central-binomial bound");
  auto* an_band = c_anti->add_option("--band", an.band,
                                     "gaussian band report on the interval a,b");
  an_prof->excludes(an_probe)->excludes(an_erdos)->excludes(an_band);
  an_probe->excludes(an_erdos)->excludes(an_band);
  an_erdos->excludes(an_band);
  c_anti->callback([&] {
    auto weights = [&]() -> std::vector<rat> {
      if (!an.weights.empty()) return parse_rat_list(an.weights);
      if (!an.in.empty()) return load_ltf(an.in).weights;
      throw error("bad_weights", "give --weights or --in");
    };
    if (!an.probe.empty()) {
      std::vector<std::string> parts = split(an.probe, ':');
      if (parts.size() != 2) throw error("bad_probe", "expected LO:HI");
      int lo = static_cast<int>(parse_long(parts[0], "probe"));
      int hi = static_cast<int>(parse_long(parts[1], "probe"));
      rat r = an.r.empty() ? rat(1) : parse_rat(an.r);
      auto family = [](int k) {
        std::vector<rat> a;
        for (int i = 1; i <= k; ++i) a.push_back(rat(i));
        return a;
      };
      auto uni = [](int k) { return InputDistribution::uniform(k); };
      emit(out, an.out, probe_csv(halasz_probe(family, r, lo, hi, uni, an.cap)));
      return;
    }
    std::vector<rat> a = weights();
    InputDistribution d = load_dist(an.dist, static_cast<int>(a.size()));
    if (!an.band.empty()) {
      std::vector<rat> ab = parse_rat_list(an.band);
      if (ab.size() != 2) throw error("bad_band", "expected two endpoints a,b");
      emit(out, an.out, jtext(gaussian_band_to_json(gaussian_band(a, ab[0], ab[1], an.cap))));
      return;
    }
    if (!an.profile.empty()) {
      emit(out, an.out, profile_csv(anticonc_profile(a, parse_rat_list(an.profile), d, an.cap)));
      return;
    }
    if (an.r.empty()) throw error("bad_radius", "this mode needs --r");
    rat r = parse_rat(an.r);
    if (an.erdos) {
      emit(out, an.out, jtext(erdos_to_json(erdos_check(a, r, d, an.cap))));
      return;
    }
    emit(out, an.out, jtext(levy_to_json(levy_exact(a, r, d, an.cap))));
  });
  c_anti->add_option("--out", an.out, "write the report here instead of stdout");
  c_anti->add_option("--cap-enum", an.cap, "enumeration arity cap");

  // ltf lp ------------------------------------------------------------------
  auto* c_lp = app.add_subcommand(
      "lp", "vertex representation of a threshold table: certificate json, "
            "gap csv, or weight floors");
  struct {
    std::string in, out, floors, eps;
    bool gaps = false;
    int cap = kDefaultEnumCap;
    long row_cap = kDefaultLpRows;
  } lp;
  c_lp->add_option("--in", lp.in, "ltf or truth-table json file")->required();
  auto* lp_gaps = c_lp->add_flag("--gaps", lp.gaps, "gap csv instead of the certificate");
  auto* lp_floors = c_lp->add_option(
      "--floors", lp.floors, "weight floor json: exact, or approx with --eps");
  lp_gaps->excludes(lp_floors);
  c_lp->add_option("--eps", lp.eps, "eps for approx floors");
  c_lp->add_option("--cap-enum", lp.cap, "enumeration arity cap");
  c_lp->add_option("--cap-lp", lp.row_cap, "lp row cap");
  c_lp->add_option("--out", lp.out, "write the report here instead of stdout");
  c_lp->callback([&] {
    LoadedFn lf = load_fn(lp.in);
    LtfRepresentation rep = ltf_representation(as_table(lf, lp.cap), lp.row_cap);
    if (lp.gaps) {
      emit(out, lp.out, gap_csv(rep.gaps));
      return;
    }
    if (!lp.floors.empty()) {
      FloorMode mode;
      if (lp.floors == "exact")
        mode = FloorMode::Exact;
      else if (lp.floors == "approx")
        mode = FloorMode::Approx;
      else
        throw error("bad_floor_mode", "expected exact or approx, got '" + lp.floors + "'");
      double eps = lp.eps.empty() ? 0.0 : to_double(parse_rat(lp.eps));
      emit(out, lp.out, jtext(weight_floor_to_json(
                            weight_floor_check(rep.gaps.normalized, eps, mode))));
      return;
    }
    emit(out, lp.out, jtext(certificate_to_json(rep.cert, rep.built.lp)));
  });

  // ltf weights ---------------------------------------------------------------
  auto* c_weights = app.add_subcommand(
      "weights", "round an ltf to integer weights at a chosen radius");
  struct {
    std::string in, out, r, eps, mode = "uniform", dist;
    bool verify_premise = false;
    int cap = kDefaultEnumCap;
  } wr;
  c_weights->add_option("--in", wr.in, "ltf json file")->required();
  c_weights->add_option("--r", wr.r, "anti-concentration radius")->required();
  c_weights->add_option("--eps", wr.eps, "distance target")->required();
  c_weights->add_option("--mode", wr.mode, "uniform or general grid scaling");
  c_weights->add_option("--dist", wr.dist, "uniform (default) or a distribution json file");
  c_weights->add_flag("--verify-premise", wr.verify_premise,
                      "check the levy mass at r before rounding");
  c_weights->add_option("--cap-enum", wr.cap, "enumeration arity cap");
  c_weights->add_option("--out", wr.out, "write the report here instead of stdout");
  c_weights->callback([&] {
    Ltf f = load_ltf(wr.in);
    RoundingMode mode;
    if (wr.mode == "uniform")
      mode = RoundingMode::Uniform;
    else if (wr.mode == "general")
      mode = RoundingMode::GeneralD;
    else
      throw error("bad_mode", "expected uniform or general, got '" + wr.mode + "'");
    int m = 0;
    for (const rat& w : f.weights)
      if (w != 0) ++m;
    RoundingSpec spec = make_rounding_spec(parse_rat(wr.r), parse_rat(wr.eps), m, mode);
    InputDistribution d = load_dist(wr.dist, f.n());
    RoundedLtf r = round_weights(f, spec, d, wr.verify_premise, wr.cap);
    emit(out, wr.out, jtext(rounded_to_json(r)));
    if (wr.verify_premise && r.premise.checked && !r.premise.holds) rc = 2;
  });

  // ltf pipeline ----------------------------------------------------------------
  auto* c_pipe = app.add_subcommand(
      "pipeline", "end-to-end low-weight approximation of an ltf");
  struct {
    std::string in, out, method, eps, dist, constants;
    std::uint64_t seed = 0;
    int budget = 16;
    int cap = kDefaultEnumCap;
    long row_cap = kDefaultLpRows;
  } pi;
  c_pipe->add_option("--method", pi.method, "ser07 | thm25 | thm2 | cor13")
      ->required()
      ->check(CLI::IsMember({"ser07", "thm25", "thm2", "cor13"}));
  c_pipe->add_option("--eps", pi.eps, "distance target")->required();
  c_pipe->add_option("--in", pi.in, "ltf json file")->required();
  c_pipe->add_option("--dist", pi.dist, "uniform (default) or a distribution json file");
  c_pipe->add_option("--seed", pi.seed, "rng seed for monte-carlo distances");
  c_pipe->add_option("--budget", pi.budget, "retry budget");
  c_pipe->add_option("--constants", pi.constants, "L_c=..,K_c=..,R_c=.. overrides");
  c_pipe->add_option("--cap-enum", pi.cap, "enumeration arity cap");
  c_pipe->add_option("--cap-lp", pi.row_cap, "lp row cap");
  c_pipe->add_option("--out", pi.out, "write the report here instead of stdout");
  c_pipe->fallthrough();
  c_pipe->callback([&] {
    Ltf f = load_ltf(pi.in);
    PipelineConfig cfg;
    cfg.budget = pi.budget;
    cfg.cap = pi.cap;
    cfg.row_cap = pi.row_cap;
    cfg.seed = pi.seed;
    apply_constants(pi.constants, cfg);
    rat eps = parse_rat(pi.eps);
    if (pi.method == "cor13") {
      Corollary13Report r = corollary13_compose(f, eps, cfg);
      emit(out, pi.out, jtext(corollary13_to_json(r)));
      if (!r.met || r.shortfall) rc = 2;
      return;
    }
    InputDistribution d = load_dist(pi.dist, f.n());
    PipelineReport r = pi.method == "ser07"   ? pipeline_erdos(f, eps, d, cfg)
                       : pi.method == "thm25" ? pipeline_halasz(f, eps, d, cfg)
                                              : pipeline_critical(f, eps, d, cfg);
    emit(out, pi.out, jtext(pipeline_report_to_json(r)));
    if (!r.met_target) rc = 2;
  });

  // ltf witness ---------------------------------------------------------------
  auto* c_wit = app.add_subcommand(
      "witness", "named hard instances and minimal-weight searches");
  struct {
    std::string out, dictator, prop14, in;
    int maj = 0, omb = 0;
    bool min_weight = false;
    long wmax = 0;
    int arity_cap = 5;
    int cap = kDefaultEnumCap;
  } wi;
  auto* wi_maj = c_wit->add_option("--maj", wi.maj, "majority on n variables, n odd");
  auto* wi_dict = c_wit->add_option("--dictator", wi.dictator, "dictator: n,i");
  auto* wi_omb = c_wit->add_option("--omb", wi.omb, "odd-max-bit witness on n variables");
  auto* wi_prop = c_wit->add_option("--prop14", wi.prop14,
                                    "head-over-majority hard instance: a,b");
  auto* wi_min = c_wit->add_flag("--min-weight", wi.min_weight,
                                 "search the minimal max-weight of --in up to --wmax");
  wi_maj->excludes(wi_dict)->excludes(wi_omb)->excludes(wi_prop)->excludes(wi_min);
  wi_dict->excludes(wi_omb)->excludes(wi_prop)->excludes(wi_min);
  wi_omb->excludes(wi_prop)->excludes(wi_min);
  wi_prop->excludes(wi_min);
  c_wit->add_option("--in", wi.in, "truth-table or ltf json file for --min-weight");
  c_wit->add_option("--wmax", wi.wmax, "largest integer weight to try");
  c_wit->add_option("--arity-cap", wi.arity_cap, "arity limit of the search");
  c_wit->add_option("--cap-enum", wi.cap, "enumeration arity cap");
  c_wit->add_option("--out", wi.out, "write the result here instead of stdout");
  c_wit->callback([&] {
    if (wi.min_weight) {
      if (wi.in.empty() || wi.wmax <= 0)
        throw error("bad_witness", "--min-weight needs --in and a positive --wmax");
      MinWeightResult r =
          min_weight_search(as_table(load_fn(wi.in), wi.cap), wi.wmax, wi.arity_cap);
      emit(out, wi.out, jtext(min_weight_to_json(r)));
      return;
    }
    Ltf f;
    if (wi.maj > 0) {
      f = majority(wi.maj);
    } else if (!wi.dictator.empty()) {
      std::vector<std::string> parts = split(wi.dictator, ',');
      if (parts.size() != 2) throw error("bad_witness", "--dictator needs n,i");
      f = dictator(static_cast<int>(parse_long(parts[0], "witness")),
                   static_cast<int>(parse_long(parts[1], "witness")));
    } else if (wi.omb > 0) {
      f = omb_witness(wi.omb);
    } else if (!wi.prop14.empty()) {
      std::vector<std::string> parts = split(wi.prop14, ',');
      if (parts.size() != 2) throw error("bad_witness", "--prop14 needs a,b");
      f = prop14_witness(static_cast<int>(parse_long(parts[0], "witness")),
                         static_cast<int>(parse_long(parts[1], "witness")), wi.cap);
    } else {
      throw error("bad_witness",
                  "choose one of --maj, --dictator, --omb, --prop14, --min-weight");
    }
    emit(out, wi.out, jtext(ltf_to_json(f)));
  });

  // ltf dist ------------------------------------------------------------------
  auto* c_dist = app.add_subcommand("dist", "distance between two functions");
  struct {
    std::string f, g, out, dist, mode = "exact", delta = "1/100", confidence = "1/1000";
    std::uint64_t seed = 0;
    int cap = kDefaultEnumCap;
  } di;
  c_dist->add_option("--f", di.f, "ltf or truth-table json file")->required();
  c_dist->add_option("--g", di.g, "ltf or truth-table json file")->required();
  c_dist->add_option("--dist", di.dist, "uniform (default) or a distribution json file");
  c_dist->add_option("--mode", di.mode, "exact or mc");
  c_dist->add_option("--delta", di.delta, "mc accuracy");
  c_dist->add_option("--confidence", di.confidence, "mc failure probability");
  c_dist->add_option("--seed", di.seed, "mc rng seed");
  c_dist->add_option("--cap-enum", di.cap, "enumeration arity cap");
  c_dist->add_option("--out", di.out, "write the report here instead of stdout");
  c_dist->callback([&] {
    LoadedFn F = load_fn(di.f), G = load_fn(di.g);
    if (F.n() != G.n())
      throw error("bad_arity", "the two functions have different arities");
    InputDistribution d = load_dist(di.dist, F.n());
    json j;
    if (di.mode == "exact") {
      rat v = distance_exact(F.fn(), G.fn(), d, di.cap);
      j["value"] = format_rat(v);
      j["value_decimal"] = to_double(v);
      j["mode"] = "exact";
    } else if (di.mode == "mc") {
      Rng rng(di.seed);
      McEstimate e = distance_mc(F.fn(), G.fn(), d, to_double(parse_rat(di.delta)),
                                 to_double(parse_rat(di.confidence)), rng);
      j["value_decimal"] = e.value;
      j["mode"] = "mc";
      j["samples"] = e.samples;
      j["delta"] = e.delta;
      j["confidence"] = e.confidence;
      j["seed"] = di.seed;
    } else {
      throw error("bad_mode", "expected exact or mc, got '" + di.mode + "'");
    }
    emit(out, di.out, jtext(j));
  });

  // ltf verify ----------------------------------------------------------------
  auto* c_verify = app.add_subcommand("verify", "run a named check suite");
  struct {
    std::string suite, out;
    VerifyParams p;
  } ve;
  c_verify->add_option("--suite", ve.suite, "suite name; see --list")->required();
  c_verify->add_option("--nmax", ve.p.nmax, "largest arity (0 = suite default)");
  c_verify->add_option("--instances", ve.p.instances, "instance count (0 = suite default)");
  c_verify->add_option("--draws", ve.p.draws, "sampling draws (0 = suite default)");
  c_verify->add_option("--seed", ve.p.seed, "rng seed");
  c_verify->add_option("--cap-enum", ve.p.cap, "enumeration arity cap");
  c_verify->add_option("--cap-lp", ve.p.row_cap, "lp row cap");
  c_verify->add_option("--out", ve.out, "write the report here instead of stdout");
  c_verify->callback([&] {
    VerifyReport r = run_verify_suite(ve.suite, ve.p);
    emit(out, ve.out, jtext(verify_report_to_json(r)));
    if (!r.ok()) rc = 2;
  });

  try {
    std::vector<std::string> rev(args.rbegin(), args.rend());
    app.parse(rev);
  } catch (const error& e) {
    err << error_to_json(e).dump() << "\n";
    return 1;
  } catch (const CLI::CallForHelp&) {
    auto subs = app.get_subcommands();
    out << (subs.empty() ? app.help() : subs.front()->help());
    return 0;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return 0;
  } catch (const CLI::ParseError& e) {
    json u;
    u["error"] = "usage";
    u["message"] = e.what();
    err << u.dump() << "\n";
    return 1;
  }
  return rc;
}

}  // namespace ltf
