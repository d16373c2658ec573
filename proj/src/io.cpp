#include "ltf/io.hpp"

#include <cstdint>
#include <fstream>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

namespace ltf {

namespace {

const json& field(const json& j, const char* name) {
  auto it = j.find(name);
  if (it == j.end()) throw error("bad_file", std::string("missing field '") + name + "'");
  return *it;
}

int int_field(const json& j, const char* name) {
  const json& v = field(j, name);
  if (!v.is_number_integer()) throw error("bad_file", std::string("field '") + name + "' is not an integer");
  return v.get<int>();
}

std::string str_field(const json& j, const char* name) {
  const json& v = field(j, name);
  if (!v.is_string()) throw error("bad_file", std::string("field '") + name + "' is not a string");
  return v.get<std::string>();
}

std::string big_str(const bigint& v) { return v.str(); }

json dist_json(const MeasuredDistance& d) {
  json out;
  out["value"] = format_rat(d.value);
  out["value_decimal"] = to_double(d.value);
  out["mode"] = d.mode == DistanceMode::Exact ? "exact" : "mc";
  if (d.mode == DistanceMode::Mc) out["samples"] = d.samples;
  return out;
}

}  // namespace

// ---------------------------------------------------------------------------
// Core value files
// ---------------------------------------------------------------------------

json ltf_to_json(const Ltf& f) {
  json j;
  j["n"] = f.n();
  json w = json::array();
  for (const rat& wi : f.weights) w.push_back(format_rat(wi));
  j["weights"] = std::move(w);
  j["theta"] = format_rat(f.theta);
  return j;
}

Ltf ltf_from_json(const json& j) {
  int n = int_field(j, "n");
  if (n < 0) throw error("bad_file", "negative arity");
  const json& w = field(j, "weights");
  if (!w.is_array()) throw error("bad_file", "'weights' is not an array");
  if (static_cast<int>(w.size()) != n)
    throw error("bad_file", "weights length disagrees with n");
  Ltf f;
  f.weights.reserve(w.size());
  for (const json& wi : w) {
    if (!wi.is_string()) throw error("bad_file", "weight entries must be rational strings");
    f.weights.push_back(parse_rat(wi.get<std::string>()));
  }
  f.theta = parse_rat(str_field(j, "theta"));
  return f;
}

json table_to_json(const TruthTable& t) {
  std::uint64_t digits = (t.size() + 3) / 4;
  std::string hex(digits, '0');
  for (std::uint64_t d = 0; d < digits; ++d) {
    int nibble = 0;
    for (int b = 0; b < 4; ++b) {
      std::uint64_t point = 4 * d + b;
      if (point < t.size() && t.get(point) == 1) nibble |= 1 << b;
    }
    hex[digits - 1 - d] = "0123456789abcdef"[nibble];
  }
  json j;
  j["n"] = t.n();
  j["bits_hex"] = std::move(hex);
  return j;
}

TruthTable table_from_json(const json& j) {
  int n = int_field(j, "n");
  if (n < 0 || n > 62) throw error("bad_file", "arity out of range");
  std::string hex = str_field(j, "bits_hex");
  TruthTable t(n);
  std::uint64_t digits = (t.size() + 3) / 4;
  if (hex.size() != digits)
    throw error("bad_file", "bits_hex length disagrees with n");
  for (std::uint64_t d = 0; d < digits; ++d) {
    char c = hex[digits - 1 - d];
    int nibble;
    if (c >= '0' && c <= '9') nibble = c - '0';
    else if (c >= 'a' && c <= 'f') nibble = c - 'a' + 10;
    else if (c >= 'A' && c <= 'F') nibble = c - 'A' + 10;
    else throw error("bad_file", "bits_hex has a non-hex digit");
    for (int b = 0; b < 4; ++b) {
      std::uint64_t point = 4 * d + b;
      if (point < t.size()) t.set(point, (nibble >> b) & 1 ? 1 : -1);
      else if ((nibble >> b) & 1)
        throw error("bad_file", "bits_hex sets a bit beyond 2^n");
    }
  }
  return t;
}

json distribution_to_json(const InputDistribution& d) {
  json j;
  if (d.is_uniform()) {
    j["kind"] = "uniform";
    j["n"] = d.n();
  } else if (d.is_product()) {
    j["kind"] = "product";
    json p = json::array();
    for (const rat& pi : d.as_product().p) p.push_back(format_rat(pi));
    j["p"] = std::move(p);
  } else {
    j["kind"] = "explicit";
    j["n"] = d.n();
    json s = json::array();
    for (const auto& [point, prob] : d.as_explicit().support)
      s.push_back(json::array({point, format_rat(prob)}));
    j["support"] = std::move(s);
  }
  return j;
}

InputDistribution distribution_from_json(const json& j) {
  std::string kind = str_field(j, "kind");
  if (kind == "uniform") {
    int n = int_field(j, "n");
    if (n < 0) throw error("bad_file", "negative arity");
    return InputDistribution::uniform(n);
  }
  if (kind == "product") {
    const json& p = field(j, "p");
    if (!p.is_array()) throw error("bad_file", "'p' is not an array");
    std::vector<rat> biases;
    for (const json& pi : p) {
      if (!pi.is_string()) throw error("bad_file", "bias entries must be rational strings");
      biases.push_back(parse_rat(pi.get<std::string>()));
    }
    return InputDistribution::product(std::move(biases));
  }
  if (kind == "explicit") {
    int n = int_field(j, "n");
    const json& s = field(j, "support");
    if (!s.is_array()) throw error("bad_file", "'support' is not an array");
    std::vector<std::pair<std::uint64_t, rat>> support;
    for (const json& e : s) {
      if (!e.is_array() || e.size() != 2 || !e[0].is_number_unsigned() || !e[1].is_string())
        throw error("bad_file", "support entries must be [point, \"num/den\"] pairs");
      support.emplace_back(e[0].get<std::uint64_t>(), parse_rat(e[1].get<std::string>()));
    }
    return InputDistribution::explicit_support(n, std::move(support));
  }
  throw error("bad_file", "unknown distribution kind '" + kind + "'");
}

// ---------------------------------------------------------------------------
// CSV exports
// ---------------------------------------------------------------------------

std::string spectrum_csv(const Spectrum& s) {
  std::ostringstream out;
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << s.n); ++mask) {
    rat c = s.coeff(mask);
    out << mask << ',' << rat_num(c).str() << ',' << rat_den(c).str() << '\n';
  }
  return out.str();
}

std::string profile_csv(const std::vector<ProfileRow>& rows) {
  std::ostringstream out;
  for (const ProfileRow& row : rows)
    out << format_rat(row.r) << ',' << rat_num(row.p).str() << ','
        << rat_den(row.p).str() << ',' << format_rat(row.v_star) << '\n';
  return out.str();
}

std::string probe_csv(const std::vector<ProbeRow>& rows) {
  std::ostringstream out;
  for (const ProbeRow& row : rows) {
    json trend = row.trend;  // shortest round-trip double rendering
    out << row.k << ',' << format_rat(row.p) << ',' << trend.dump() << '\n';
  }
  return out.str();
}

std::string gap_csv(const GapReport& g) {
  std::ostringstream out;
  for (const GapEntry& e : g.table)
    out << e.k << ',' << rat_num(e.gap).str() << ',' << rat_den(e.gap).str()
        << ',' << format_rat(e.bound) << ',' << (e.pass ? 1 : 0) << '\n';
  return out.str();
}

// ---------------------------------------------------------------------------
// Report JSON
// ---------------------------------------------------------------------------

json influence_to_json(const InfluenceProfile& p) {
  json j;
  json inf = json::array();
  for (const rat& v : p.inf) inf.push_back(format_rat(v));
  j["influences"] = std::move(inf);
  j["total"] = format_rat(p.total);
  j["total_decimal"] = to_double(p.total);
  return j;
}

json margin_to_json(const MarginReport& r) {
  json j;
  j["count_below"] = r.count_below;
  j["fraction_below"] = format_rat(r.fraction_below);
  j["tau_regular"] = r.tau_regular;
  j["small_margin_ok"] = r.small_margin_ok;
  j["min_margin_sq"] = format_rat(r.min_margin_sq);
  j["max_margin_sq"] = format_rat(r.max_margin_sq);
  return j;
}

json critical_index_to_json(const CriticalIndexReport& r) {
  json j;
  j["tau"] = format_rat(r.tau);
  j["infinite"] = r.infinite;
  j["ell"] = r.ell;
  json w = json::array(), t = json::array(), o = json::array();
  for (const rat& v : r.weight_sq) w.push_back(format_rat(v));
  for (const rat& v : r.tail_sq) t.push_back(format_rat(v));
  for (int v : r.order) o.push_back(v);
  j["weight_sq"] = std::move(w);
  j["tail_sq"] = std::move(t);
  j["order"] = std::move(o);
  return j;
}

json levy_to_json(const LevyResult& r) {
  json j;
  j["p"] = format_rat(r.p);
  j["p_decimal"] = to_double(r.p);
  j["v_star"] = format_rat(r.v_star);
  return j;
}

json erdos_to_json(const ErdosReport& r) {
  json j;
  j["p"] = format_rat(r.p);
  if (r.bound) j["bound"] = format_rat(*r.bound);
  j["pass"] = r.pass;
  j["trend"] = r.trend;
  return j;
}

json gaussian_band_to_json(const GaussianBandReport& r) {
  json j;
  j["exact"] = format_rat(r.exact);
  j["exact_decimal"] = to_double(r.exact);
  j["band"] = r.band;
  j["residual"] = r.residual;
  j["two_tau"] = r.two_tau;
  j["pass"] = r.pass;
  j["berry_esseen_c"] = r.berry_esseen_c;
  return j;
}

json certificate_to_json(const VertexCertificate& c, const LpProblem& lp) {
  json j;
  json w = json::array();
  for (const rat& wi : c.w) w.push_back(format_rat(wi));
  j["weights"] = std::move(w);
  j["objective"] = format_rat(c.objective);
  json rows = json::array();
  for (int idx : c.tight_rows) {
    const LpRow& row = lp.rows[idx];
    json e;
    e["row"] = idx;
    switch (row.kind) {
      case RowKind::HypercubePoint:
        e["kind"] = "point";
        e["point"] = row.point;
        break;
      case RowKind::GapRow:
        e["kind"] = "gap";
        e["index"] = row.gap_index;
        break;
      case RowKind::ExtendedPoint:
        e["kind"] = "ext_point";
        e["point"] = row.point;
        e["t"] = row.ext_t;
        break;
    }
    rows.push_back(std::move(e));
  }
  j["tight_rows"] = std::move(rows);
  json basis = json::array();
  for (int idx : c.basis_rows) basis.push_back(idx);
  j["basis_rows"] = std::move(basis);
  return j;
}

json weight_floor_to_json(const WeightFloorReport& r) {
  json j;
  j["mode"] = r.mode == FloorMode::Exact ? "exact" : "approx";
  if (r.mode == FloorMode::Approx) j["eps"] = r.eps;
  json entries = json::array();
  for (const FloorEntry& e : r.entries) {
    json row;
    row["k"] = e.k;
    row["w_k"] = format_rat(e.wk);
    if (r.mode == FloorMode::Exact) row["floor"] = format_rat(e.floor_q);
    else row["floor"] = e.floor_d;
    row["pass"] = e.pass;
    entries.push_back(std::move(row));
  }
  j["entries"] = std::move(entries);
  j["note"] = r.note;
  return j;
}

json min_weight_to_json(const MinWeightResult& r) {
  json j;
  j["found"] = r.found;
  if (r.found) {
    j["max_weight"] = r.max_weight;
    j["witness"] = ltf_to_json(r.witness);
  }
  j["note"] = r.note;
  return j;
}

json rounded_to_json(const RoundedLtf& r) {
  json j;
  j["h"] = ltf_to_json(r.h);
  json v = json::array();
  for (const bigint& vi : r.v) v.push_back(big_str(vi));
  j["v"] = std::move(v);
  j["max_weight"] = big_str(r.max_weight);
  j["weight_ceiling"] = big_str(r.weight_ceiling);
  j["sum_v_sq"] = big_str(r.sum_v_sq);
  j["e_l1"] = format_rat(r.e_l1);
  j["degenerate"] = r.degenerate;
  json premise;
  premise["checked"] = r.premise.checked;
  if (r.premise.checked) {
    premise["holds"] = r.premise.holds;
    premise["p"] = format_rat(r.premise.p);
  }
  j["premise"] = std::move(premise);
  return j;
}

json junta_report_to_json(const JuntaApproximator& a, std::uint64_t seed) {
  json j;
  j["case"] = a.case_taken;
  j["head_size"] = a.head_size;
  j["draw_count"] = a.draw_count;
  j["draws_used"] = a.draws_used;
  j["junta_size"] = a.relevant.size();
  json rel = json::array();
  for (int v : a.relevant) rel.push_back(v);
  j["relevant"] = std::move(rel);
  j["g"] = ltf_to_json(a.g);
  json d;
  d["value"] = format_rat(a.measured_dist);
  d["value_decimal"] = to_double(a.measured_dist);
  d["mode"] = "exact";
  j["distance"] = std::move(d);
  j["met_target"] = a.met_target;
  j["shortfall"] = a.shortfall;
  j["kappa_sq"] = format_rat(a.kappa_sq);
  j["l1_sq"] = format_rat(a.l1_sq);
  j["l1_bound_sq"] = format_rat(a.l1_bound_sq);
  j["l1_within_bound"] = a.l1_within_bound;
  j["seed"] = seed;
  return j;
}

json pipeline_report_to_json(const PipelineReport& r) {
  json j;
  j["method"] = r.method;
  j["distribution"] = r.dist_kind;
  j["h"] = ltf_to_json(r.h);
  j["max_weight"] = big_str(r.max_weight);
  j["weight_ceiling"] = big_str(r.weight_ceiling);
  j["sum_v_sq"] = big_str(r.sum_v_sq);
  j["distance"] = dist_json(r.dist);
  j["target"] = format_rat(r.target);
  j["met_target"] = r.met_target;
  j["shortfall"] = r.shortfall;
  j["k"] = r.k;
  j["r"] = format_rat(r.r);
  j["alpha"] = format_rat(r.alpha);
  j["retries"] = r.retries;
  json t;
  t["branch"] = r.trace.branch;
  t["constant"] = r.trace.constant;
  t["infinite_ell"] = r.trace.infinite_ell;
  t["ell"] = r.trace.ell;
  t["ell_used"] = r.trace.ell_used;
  t["L"] = r.trace.L;
  t["K"] = r.trace.K;
  t["R0"] = r.trace.R0;
  t["R0_used"] = r.trace.R0_used;
  t["lp_capped"] = r.trace.lp_capped;
  j["trace"] = std::move(t);
  j["eps"] = format_rat(r.eps);
  json c;
  c["L_c"] = r.config.L_c;
  c["K_c"] = r.config.K_c;
  c["R_c"] = r.config.R_c;
  c["budget"] = r.config.budget;
  c["cap"] = r.config.cap;
  c["row_cap"] = r.config.row_cap;
  c["seed"] = r.config.seed;
  j["config"] = std::move(c);
  return j;
}

json corollary13_to_json(const Corollary13Report& r) {
  json j;
  j["junta"] = junta_report_to_json(r.junta, r.rounding.config.seed);
  j["rounding"] = pipeline_report_to_json(r.rounding);
  j["inf_sq"] = format_rat(r.inf_sq);
  j["sum_v_sq"] = big_str(r.sum_v_sq);
  j["total"] = dist_json(r.total);
  j["met"] = r.met;
  j["shortfall"] = r.shortfall;
  j["eps"] = format_rat(r.eps);
  return j;
}

json error_to_json(const error& e) {
  json j;
  j["error"] = e.code();
  j["message"] = e.what();
  return j;
}

// ---------------------------------------------------------------------------
// Files
// ---------------------------------------------------------------------------

json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw error("bad_file", "cannot open '" + path + "'");
  json j = json::parse(in, nullptr, false);
  if (j.is_discarded()) throw error("bad_file", "malformed JSON in '" + path + "'");
  return j;
}

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw error("bad_file", "cannot open '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void write_text_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw error("bad_file", "cannot open '" + path + "' for writing");
  out << text;
  if (!out) throw error("bad_file", "short write to '" + path + "'");
}

}  // namespace ltf
