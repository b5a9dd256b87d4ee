#pragma once

#include <json.hpp>
#include <span>
#include <string>

#include "betaspec/continuity.hpp"
#include "betaspec/errors.hpp"
#include "betaspec/expansion.hpp"
#include "betaspec/functional.hpp"
#include "betaspec/quartic.hpp"
#include "betaspec/spectra.hpp"
#include "betaspec/transfer.hpp"

namespace betaspec::report {

using json = nlohmann::ordered_json;

inline constexpr int kSchema = 1;

json complex(cplx z);  // [re, im]
json document(const char* kind);  // {"schema": 1, "kind": ...}

json to_json(const Eigenvalue& e);
json to_json(const SpectrumReport& r);
json to_json(const ScanPoint& p);
json to_json(const ScanResult& r);
json to_json(const DigitSequence& d);
json to_json(const EigenCurve& c);
json to_json(const HoelderEstimate& h);
json to_json(const ProbePoint& p);
json to_json(const StepFunction& f);
json to_json(const DecayFit& d);
json to_json(const QuarticRoots& r);
json to_json(const VerificationReport& r);
json error(ErrorKind kind, const std::string& message);

// Two-space indent plus trailing newline.
std::string dump(const json& j);

std::string csv_number(double v);
std::string scan_csv(const ScanResult& r);  // one row per eigenvalue, one per failed point
std::string curve_csv(const EigenCurve& c);
std::string digits_csv(const DigitSequence& d);
std::string functional_csv(std::span<const FunctionalEval> samples);
std::string probe_csv(std::span<const ProbePoint> probes);
std::string decay_csv(const DecayFit& d);

}  // namespace betaspec::report
