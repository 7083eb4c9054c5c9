#pragma once

#include "torsionforge/assembly.hpp"
#include "torsionforge/blocks.hpp"
#include "torsionforge/gram.hpp"

#include "json.hpp"

#include <string>
#include <variant>

namespace torsionforge::io {

using json = nlohmann::ordered_json;

// Canonical serialization: insertion-ordered keys, floats with 17
// significant digits; parsing and re-serializing a report is byte-identical.
std::string to_canonical_string(const json& j, int indent = 2);

json complex_to_json(Complex z);
Complex complex_from_json(const json& j);

// torsion values are printed together with the mod-sign convention
json torsion_to_json(const TorsionValue& t);

// ---- input documents ----

// {"kind":"angles","alpha":[..6]} | {"kind":"lengths","lengths":[..6]}
// | {"kind":"mixed","u":[[re,im]x6]}
TetShape parse_tet_shape(const json& j);

// {"kind":"cone","alpha":[..3]} | {"kind":"boundary","lengths":[..3]}
PantsGeometry parse_pants(const json& j);

// {"kind":"fsl","alpha":[..6]} | {"kind":"dual","lengths":[..6]}
BlockGeometry parse_block(const json& j);

struct AssembleInput {
    GluingGraph graph;
    CharacterPoint character;
};

// the gluing-graph document described in the README
AssembleInput parse_assemble(const json& j);

// "p,q;p,q;..." one pair per torus
CurveSystem parse_curves(const std::string& spec, int tori);

json load_file(const std::string& path);

}  // namespace torsionforge::io
