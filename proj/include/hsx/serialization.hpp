#pragma once

#include <json.hpp>
#include <string>

#include "hsx/disk_bvp.hpp"
#include "hsx/interpolation.hpp"
#include "hsx/ro_weight.hpp"
#include "hsx/spectra.hpp"

namespace hsx {

using json = nlohmann::json;

json to_json(const RoWeight& w);
RoWeight weight_from_json(const json& j);

json to_json(const CircleSpectrum& s);
CircleSpectrum circle_spectrum_from_json(const json& j);

json to_json(const LatticeSpectrum& s);
LatticeSpectrum lattice_spectrum_from_json(const json& j);

json to_json(const IndexPair& p);
json to_json(const ConvergenceVerdict& v);

json to_json(const DiskField& f);
DiskField disk_field_from_json(const json& j, std::shared_ptr<const RadialGrid> grid, int K);

/// {"m":…, "f":{"modes":[{"k":…, "radial":[…]}]}, "g":{"coeffs":[[k,re,im],…]},
///  "K":…, "R":…}
DiskBvpProblem problem_from_json(const json& j);
json to_json(const DiskBvpProblem& p);

json to_json(const SolveReport& r);

/// CSV rows "key,value" from a flattened JSON object.
std::string json_to_kv_csv(const json& j);

/// CSV rows "k,re,im" for a circle spectrum.
std::string circle_spectrum_to_csv(const CircleSpectrum& s);
CircleSpectrum circle_spectrum_from_csv(const std::string& text);

}  // namespace hsx
