#include "json_io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

namespace torsionforge::io {

namespace {

std::string format_double(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

void emit(const json& j, std::string& out, int indent, int depth) {
    const std::string pad(static_cast<std::size_t>(indent) * depth, ' ');
    const std::string pad1(static_cast<std::size_t>(indent) * (depth + 1), ' ');
    switch (j.type()) {
        case json::value_t::object: {
            if (j.empty()) {
                out += "{}";
                return;
            }
            out += "{\n";
            std::size_t i = 0;
            for (auto it = j.begin(); it != j.end(); ++it, ++i) {
                out += pad1 + json(it.key()).dump() + ": ";
                emit(it.value(), out, indent, depth + 1);
                if (i + 1 < j.size()) out += ",";
                out += "\n";
            }
            out += pad + "}";
            return;
        }
        case json::value_t::array: {
            if (j.empty()) {
                out += "[]";
                return;
            }
            // short numeric arrays stay on one line
            bool scalars = true;
            for (const auto& v : j)
                if (v.is_structured()) scalars = false;
            if (scalars && j.size() <= 8) {
                out += "[";
                for (std::size_t i = 0; i < j.size(); ++i) {
                    emit(j[i], out, indent, depth);
                    if (i + 1 < j.size()) out += ", ";
                }
                out += "]";
                return;
            }
            out += "[\n";
            for (std::size_t i = 0; i < j.size(); ++i) {
                out += pad1;
                emit(j[i], out, indent, depth + 1);
                if (i + 1 < j.size()) out += ",";
                out += "\n";
            }
            out += pad + "]";
            return;
        }
        case json::value_t::number_float:
            out += format_double(j.get<double>());
            return;
        default:
            out += j.dump();
            return;
    }
}

double get_number(const json& j, const char* what) {
    if (!j.is_number()) throw InvalidInputError(std::string(what) + ": expected a number");
    return j.get<double>();
}

std::array<double, 6> get_six(const json& j, const char* what) {
    if (!j.is_array() || j.size() != 6)
        throw InvalidInputError(std::string(what) + ": expected an array of 6 numbers");
    std::array<double, 6> out{};
    for (int i = 0; i < 6; ++i) out[i] = get_number(j[i], what);
    return out;
}

}  // namespace

std::string to_canonical_string(const json& j, int indent) {
    std::string out;
    emit(j, out, indent, 0);
    out += "\n";
    return out;
}

json complex_to_json(Complex z) { return json::array({z.real(), z.imag()}); }

Complex complex_from_json(const json& j) {
    if (j.is_number()) return Complex(j.get<double>(), 0.0);
    if (!j.is_array() || j.size() != 2)
        throw InvalidInputError("complex value: expected [re, im]");
    return Complex(get_number(j[0], "complex"), get_number(j[1], "complex"));
}

json torsion_to_json(const TorsionValue& t) {
    json out = json::object();
    out["value"] = complex_to_json(t.value);
    out["modulo_sign"] = true;
    return out;
}

TetShape parse_tet_shape(const json& j) {
    const std::string kind = j.value("kind", "");
    if (kind == "angles") return TetShape::from_angles(get_six(j.at("alpha"), "alpha"));
    if (kind == "lengths") return TetShape::from_lengths(get_six(j.at("lengths"), "lengths"));
    if (kind == "mixed") {
        const json& u = j.at("u");
        if (!u.is_array() || u.size() != 6)
            throw InvalidInputError("mixed shape: expected \"u\" with 6 complex entries");
        std::array<Complex, 6> arr{};
        for (int i = 0; i < 6; ++i) arr[i] = complex_from_json(u[i]);
        return TetShape::mixed(arr);
    }
    throw InvalidInputError("tet shape: \"kind\" must be angles, lengths or mixed");
}

PantsGeometry parse_pants(const json& j) {
    const std::string kind = j.value("kind", "");
    auto get3 = [&](const char* key) {
        const json& a = j.at(key);
        if (!a.is_array() || a.size() != 3)
            throw InvalidInputError(std::string("pants: expected 3 numbers in \"") + key + "\"");
        return std::array<double, 3>{get_number(a[0], key), get_number(a[1], key),
                                     get_number(a[2], key)};
    };
    if (kind == "cone") {
        const auto a = get3("alpha");
        return PantsGeometry::cone(a[0], a[1], a[2]);
    }
    if (kind == "boundary") {
        const auto l = get3("lengths");
        return PantsGeometry::boundary(l[0], l[1], l[2]);
    }
    throw InvalidInputError("pants: \"kind\" must be cone or boundary");
}

BlockGeometry parse_block(const json& j) {
    const std::string kind = j.value("kind", "");
    if (kind == "fsl")
        return BlockGeometry::fsl(TetShape::from_angles(get_six(j.at("alpha"), "alpha")));
    if (kind == "dual")
        return BlockGeometry::dual(TetShape::from_lengths(get_six(j.at("lengths"), "lengths")));
    throw InvalidInputError("block: \"kind\" must be fsl or dual");
}

AssembleInput parse_assemble(const json& j) {
    AssembleInput out;
    const std::string kind = j.value("kind", "");
    if (kind == "fsl")
        out.graph.kind = ManifoldKind::Fsl;
    else if (kind == "double")
        out.graph.kind = ManifoldKind::Double;
    else
        throw InvalidInputError("assemble: \"kind\" must be fsl or double");
    out.character.kind = out.graph.kind;

    for (const json& b : j.at("blocks")) {
        GluingGraph::Piece piece;
        piece.id = b.at("id").get<int>();
        const std::string bk = b.value("kind", "");
        if (bk == "dblock")
            piece.kind = PieceKind::DBlock;
        else if (bk == "dual_dblock")
            piece.kind = PieceKind::DualDBlock;
        else if (bk == "thickened_pants")
            piece.kind = PieceKind::ThickenedPants;
        else
            throw InvalidInputError("assemble: block kind must be dblock, dual_dblock or "
                                    "thickened_pants");
        out.graph.blocks.push_back(piece);
    }
    for (const json& itf : j.at("interfaces")) {
        GluingGraph::Interface rec;
        rec.id = itf.at("id").get<int>();
        auto side = [&](const char* key) {
            const json& s = itf.at(key);
            if (!s.is_array() || s.size() != 2)
                throw InvalidInputError("assemble: interface side must be [block, face]");
            return std::pair<int, int>{s[0].get<int>(), s[1].get<int>()};
        };
        rec.left = side("left");
        rec.right = side("right");
        out.graph.interfaces.push_back(rec);
    }
    for (const json& t : j.at("tori")) {
        GluingGraph::Torus rec;
        rec.id = t.at("id").get<int>();
        for (const json& v : t.at("traversal")) {
            if (!v.is_array() || v.size() != 2)
                throw InvalidInputError("assemble: traversal entries are [block, slot]");
            rec.traversal.push_back({v[0].get<int>(), v[1].get<int>()});
        }
        out.graph.tori.push_back(rec);
        if (t.contains("alpha") && out.graph.kind == ManifoldKind::Fsl)
            out.character.params.push_back(get_number(t.at("alpha"), "alpha"));
        else if (t.contains("length") && out.graph.kind == ManifoldKind::Double)
            out.character.params.push_back(get_number(t.at("length"), "length"));
        else
            throw InvalidInputError(
                "assemble: each torus needs \"alpha\" (fsl) or \"length\" (double)");
    }

    // optional inline block shapes are validated against the derived ones
    const ResolvedGraph r = resolve_graph(out.graph);
    std::size_t bi = 0;
    for (const json& b : j.at("blocks")) {
        if (b.contains("u")) {
            const json& u = b.at("u");
            if (!u.is_array() || u.size() != 6)
                throw InvalidInputError("assemble: inline block \"u\" must have 6 entries");
            for (int s = 0; s < 6; ++s) {
                const Complex inline_u = complex_from_json(u[s]);
                const Complex p = out.character.params[r.component_map[bi][s]];
                const Complex derived =
                    out.graph.kind == ManifoldKind::Fsl ? Complex(0.0, 1.0) * p : p;
                if (std::abs(inline_u - derived) > 1e-9)
                    throw InvalidInputError(
                        "assemble: inline block shape disagrees with per-torus values");
            }
        }
        ++bi;
    }
    return out;
}

CurveSystem parse_curves(const std::string& spec, int tori) {
    CurveSystem out;
    std::stringstream ss(spec);
    std::string part;
    while (std::getline(ss, part, ';')) {
        const auto comma = part.find(',');
        if (comma == std::string::npos)
            throw InvalidInputError("curves: expected \"p,q;p,q;...\"");
        try {
            out.pq.push_back({std::stoi(part.substr(0, comma)), std::stoi(part.substr(comma + 1))});
        } catch (const std::exception&) {
            throw InvalidInputError("curves: expected integer pairs \"p,q\"");
        }
    }
    if (static_cast<int>(out.pq.size()) != tori)
        throw InvalidInputError("curves: need exactly one (p,q) pair per torus");
    return out;
}

json load_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw InvalidInputError("cannot open input file: " + path);
    try {
        return json::parse(in);
    } catch (const json::parse_error& e) {
        throw InvalidInputError(std::string("JSON parse error in ") + path + ": " + e.what());
    }
}

}  // namespace torsionforge::io
