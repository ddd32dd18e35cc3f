#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include <json.hpp>

#include "assocmem/hopfield.hpp"
#include "assocmem/holographic.hpp"
#include "assocmem/quantum.hpp"

namespace assocmem {

// Interchange format shared by all models:
//   pattern sets  {"n", "p", "kind": "real"|"complex", "grid_weight", "patterns": [[...]]}
//   Hebb matrix   {"kind": "real_matrix", "model": "hopfield", "n", "p", "zero_diagonal",
//                  "values": [row-major], "patterns": <real pattern set>}
//   holographic   {"kind": "complex_matrix", "model": "holographic", "n_in", "n_out", "p",
//                  "values": [[re, im], ...], "stimuli": <set>, "responses": <set>}
//   Green memory  {"kind": "complex_matrix", "model": "quantum", "n", "grid_weight",
//                  "eigenstate_count", "orthonormal_source", "values": [[re, im], ...],
//                  "eigenstates": <complex pattern set>}
// Complex entries are [re, im] pairs. Doubles are written in shortest
// round-trip form, so load(save(x)) is bitwise identical.
using Json = nlohmann::ordered_json;

Json to_json(const RealPatternSet& set);
Json to_json(const std::vector<ComplexState>& states);
Json to_json(const HebbMatrix& J, const RealPatternSet& patterns);
Json to_json(const HoloMatrix& J);
Json to_json(const GreenMemory& G);

std::string pattern_kind(const Json& j);
RealPatternSet real_patterns_from_json(const Json& j);
std::vector<ComplexState> complex_states_from_json(const Json& j);

struct StoredHebb {
    HebbMatrix matrix;
    RealPatternSet patterns;
};
StoredHebb hebb_from_json(const Json& j);
HoloMatrix holo_from_json(const Json& j);
GreenMemory green_from_json(const Json& j);

Json read_json_file(const std::filesystem::path& path);
void write_text_file(const std::filesystem::path& path, const std::string& text);

} // namespace assocmem
