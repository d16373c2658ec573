#pragma once

#include "ltf/anticonc.hpp"
#include "ltf/core.hpp"
#include "ltf/fourier.hpp"
#include "ltf/junta.hpp"
#include "ltf/lp_repr.hpp"
#include "ltf/weight_approx.hpp"

#include "json.hpp"

#include <string>
#include <vector>

namespace ltf {

/// Insertion-ordered JSON: emitted documents keep their field order, so a
/// given value always serializes to the same bytes.
using json = nlohmann::ordered_json;

// ---------------------------------------------------------------------------
// Core value files
// ---------------------------------------------------------------------------

/// {"n": int, "weights": ["num/den", ...], "theta": "num/den"}
json ltf_to_json(const Ltf& f);
Ltf ltf_from_json(const json& j);

/// {"n": int, "bits_hex": hex string}; bit `point` of the hex value is 1 when
/// f at that point code is +1, rendered high nibble first and padded to
/// ceil(2^n / 4) digits.
json table_to_json(const TruthTable& t);
TruthTable table_from_json(const json& j);

/// {"kind": "uniform", "n"} | {"kind": "product", "p": [...]} |
/// {"kind": "explicit", "n", "support": [[point, "num/den"], ...]}
json distribution_to_json(const InputDistribution& d);
InputDistribution distribution_from_json(const json& j);

// ---------------------------------------------------------------------------
// CSV exports (headerless; one row per entry)
// ---------------------------------------------------------------------------

/// mask,num,den for every mask in 0..2^n-1.
std::string spectrum_csv(const Spectrum& s);

/// r,p_num,p_den,v_star per profile row; r and v_star as rational strings.
std::string profile_csv(const std::vector<ProfileRow>& rows);

/// k,p_r,trend per probe row; p_r a rational string, trend a decimal.
std::string probe_csv(const std::vector<ProbeRow>& rows);

/// k,gap_num,gap_den,bound,pass per gap-table entry; pass as 1/0.
std::string gap_csv(const GapReport& g);

// ---------------------------------------------------------------------------
// Report JSON
// ---------------------------------------------------------------------------

json influence_to_json(const InfluenceProfile& p);
json margin_to_json(const MarginReport& r);
json critical_index_to_json(const CriticalIndexReport& r);
json levy_to_json(const LevyResult& r);
json erdos_to_json(const ErdosReport& r);
json gaussian_band_to_json(const GaussianBandReport& r);

/// Weights, objective, and the tight rows with their provenance (the LP the
/// certificate was solved against supplies the row meanings).
json certificate_to_json(const VertexCertificate& c, const LpProblem& lp);

json weight_floor_to_json(const WeightFloorReport& r);
json min_weight_to_json(const MinWeightResult& r);

json rounded_to_json(const RoundedLtf& r);

/// Case taken, head size, draw counts, junta size, measured distance, and the
/// seed the run consumed.
json junta_report_to_json(const JuntaApproximator& a, std::uint64_t seed);

json pipeline_report_to_json(const PipelineReport& r);
json corollary13_to_json(const Corollary13Report& r);

/// {"error": code, "message": text} for the CLI error stream.
json error_to_json(const error& e);

// ---------------------------------------------------------------------------
// Files
// ---------------------------------------------------------------------------

/// Parses a whole JSON file; throws error("bad_file") on unreadable input or
/// malformed JSON.
json read_json_file(const std::string& path);

std::string read_text_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& text);

}  // namespace ltf
