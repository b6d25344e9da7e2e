#pragma once

// JSON encoding of bodies, measures, random vectors, D_p-balls and stable
// specs.  Parsing errors carry the JSON path of the offending value.

#include <json.hpp>

#include <fstream>
#include <sstream>
#include <string>

#include "dmc/bodies.hpp"
#include "dmc/measures.hpp"
#include "dmc/stable.hpp"

namespace dmc {

using Json = nlohmann::ordered_json;

class SchemaError : public Error {
public:
    SchemaError(const std::string& path, const std::string& msg) : Error(path + ": " + msg), path_(path) {}
    const std::string& path() const noexcept { return path_; }

private:
    std::string path_;
};

/// A JSON value together with its path from the document root.
class JsonNode {
public:
    JsonNode(const Json& j, std::string path) : j_(&j), path_(std::move(path)) {}

    const Json& json() const noexcept { return *j_; }
    const std::string& path() const noexcept { return path_; }

    [[noreturn]] void fail(const std::string& msg) const { throw SchemaError(path_, msg); }

    bool has(const char* key) const { return j_->is_object() && j_->contains(key); }

    JsonNode operator[](const char* key) const
    {
        if (!j_->is_object()) fail("expected an object");
        auto it = j_->find(key);
        if (it == j_->end()) throw SchemaError(path_, std::string("missing field '") + key + "'");
        return {*it, path_ + "." + key};
    }

    std::size_t size() const
    {
        if (!j_->is_array()) fail("expected an array");
        return j_->size();
    }

    JsonNode operator[](std::size_t i) const
    {
        if (!j_->is_array()) fail("expected an array");
        return {j_->at(i), path_ + "[" + std::to_string(i) + "]"};
    }

    double number() const
    {
        if (!j_->is_number()) fail("expected a number");
        const double x = j_->get<double>();
        if (!std::isfinite(x)) fail("expected a finite number");
        return x;
    }

    std::size_t count() const
    {
        if (!j_->is_number_integer() && !j_->is_number_unsigned()) fail("expected a nonnegative integer");
        const auto v = j_->get<long long>();
        if (v < 0) fail("expected a nonnegative integer");
        return static_cast<std::size_t>(v);
    }

    bool boolean() const
    {
        if (!j_->is_boolean()) fail("expected a boolean");
        return j_->get<bool>();
    }

    std::string string() const
    {
        if (!j_->is_string()) fail("expected a string");
        return j_->get<std::string>();
    }

    Vec vec() const
    {
        Vec v(size());
        for (std::size_t i = 0; i < v.size(); ++i) v[i] = (*this)[i].number();
        return v;
    }

    Vec vec(std::size_t n) const
    {
        Vec v = vec();
        if (v.size() != n)
            fail("expected " + std::to_string(n) + " entries, got " + std::to_string(v.size()));
        return v;
    }

private:
    const Json* j_;
    std::string path_;
};

/// Runs `f` and rewraps library validation errors with the node path.
template <class F>
auto at_path(const JsonNode& node, F&& f) -> decltype(f())
{
    try {
        return f();
    } catch (const SchemaError&) {
        throw;
    } catch (const Error& e) {
        throw SchemaError(node.path(), e.what());
    }
}

// ---------------------------------------------------------------------------
// bodies

inline ConvexBody parse_body(const JsonNode& node)
{
    const std::string kind = node["kind"].string();
    return at_path(node, [&]() -> ConvexBody {
        if (kind == "zonotope") {
            const std::size_t n = node["dim"].count();
            const JsonNode gens = node["generators"];
            Zonotope z{n, {}};
            for (std::size_t i = 0; i < gens.size(); ++i) z.generators.push_back(gens[i].vec(n));
            return ConvexBody(std::move(z));
        }
        if (kind == "genzonoid") {
            const std::size_t n = node["dim"].count();
            const JsonNode atoms = node["atoms"];
            GeneralizedZonoid g{n, {}};
            for (std::size_t i = 0; i < atoms.size(); ++i)
                g.atoms.push_back({atoms[i]["v"].vec(n), atoms[i]["w"].number()});
            return ConvexBody(std::move(g));
        }
        if (kind == "lpball") {
            const std::size_t n = node["dim"].count();
            const JsonNode q = node["q"];
            double qq = 0.0;
            if (q.json().is_string()) {
                if (q.string() != "inf") q.fail("expected a number or \"inf\"");
                qq = kInf;
            } else {
                qq = q.number();
            }
            return ConvexBody(LpBall{n, qq});
        }
        if (kind == "diag") return ConvexBody(DiagScaled{node["scale"].vec(), share(parse_body(node["inner"]))});
        if (kind == "minksum") {
            const JsonNode parts = node["parts"];
            MinkSum m;
            for (std::size_t i = 0; i < parts.size(); ++i) m.parts.push_back(share(parse_body(parts[i])));
            return ConvexBody(std::move(m));
        }
        if (kind == "scaled") return ConvexBody(Scaled{node["c"].number(), share(parse_body(node["inner"]))});
        if (kind == "polygon2d") {
            const JsonNode verts = node["vertices"];
            Polygon2D p;
            for (std::size_t i = 0; i < verts.size(); ++i) {
                const Vec v = verts[i].vec(2);
                p.vertices.push_back({v[0], v[1]});
            }
            return ConvexBody(std::move(p));
        }
        node["kind"].fail("unknown body kind '" + kind + "'");
    });
}

inline Json vec_json(std::span<const double> v) { return Json(Vec(v.begin(), v.end())); }

inline Json atoms_json(const std::vector<WeightedDirection>& atoms)
{
    Json a = Json::array();
    for (const auto& x : atoms) a.push_back({{"v", vec_json(x.v)}, {"w", x.w}});
    return a;
}

inline Json body_json(const ConvexBody& k)
{
    return std::visit(
        [&](const auto& b) -> Json {
            using T = std::decay_t<decltype(b)>;
            Json j;
            j["kind"] = k.kind();
            if constexpr (std::is_same_v<T, Zonotope>) {
                j["dim"] = b.dim;
                j["generators"] = b.generators;
            } else if constexpr (std::is_same_v<T, GeneralizedZonoid>) {
                j["dim"] = b.dim;
                j["atoms"] = atoms_json(b.atoms);
            } else if constexpr (std::is_same_v<T, LpBall>) {
                j["dim"] = b.dim;
                if (std::isinf(b.q)) {
                    j["q"] = "inf";
                } else {
                    j["q"] = b.q;
                }
            } else if constexpr (std::is_same_v<T, DiagScaled>) {
                j["scale"] = b.scale;
                j["inner"] = body_json(*b.inner);
            } else if constexpr (std::is_same_v<T, MinkSum>) {
                j["parts"] = Json::array();
                for (const auto& p : b.parts) j["parts"].push_back(body_json(*p));
            } else if constexpr (std::is_same_v<T, Scaled>) {
                j["c"] = b.c;
                j["inner"] = body_json(*b.inner);
            } else {
                j["vertices"] = Json::array();
                for (const auto& v : b.vertices) j["vertices"].push_back({v[0], v[1]});
            }
            return j;
        },
        k.variant());
}

// ---------------------------------------------------------------------------
// measures and laws

inline SphereMeasure parse_measure(const JsonNode& node)
{
    const std::size_t n = node["dim"].count();
    const JsonNode atoms = node["atoms"];
    std::vector<WeightedDirection> a;
    for (std::size_t i = 0; i < atoms.size(); ++i) a.push_back({atoms[i]["v"].vec(n), atoms[i]["w"].number()});
    const bool even = node.has("even") && node["even"].boolean();
    return at_path(node, [&] { return SphereMeasure(n, std::move(a), even); });
}

inline Json measure_json(const SphereMeasure& mu)
{
    Json j;
    j["dim"] = mu.dim();
    j["atoms"] = atoms_json(mu.atoms());
    if (mu.is_even()) j["even"] = true;
    return j;
}

inline DiscreteRandomVector parse_random_vector(const JsonNode& node)
{
    const std::size_t n = node["dim"].count();
    const JsonNode atoms = node["atoms"];
    std::vector<VectorAtom> a;
    for (std::size_t i = 0; i < atoms.size(); ++i) a.push_back({atoms[i]["x"].vec(n), atoms[i]["p"].number()});
    const bool sym = node.has("symmetric") && node["symmetric"].boolean();
    return at_path(node, [&] { return DiscreteRandomVector(n, std::move(a), sym); });
}

inline Json random_vector_json(const DiscreteRandomVector& xi)
{
    Json j;
    j["dim"] = xi.dim();
    j["atoms"] = Json::array();
    for (const auto& a : xi.atoms()) j["atoms"].push_back({{"x", vec_json(a.x)}, {"p", a.p}});
    j["symmetric"] = xi.symmetric();
    return j;
}

inline double parse_exponent(const JsonNode& node)
{
    if (node.json().is_string()) {
        if (node.string() != "inf") node.fail("expected a number or \"inf\"");
        return kInf;
    }
    return node.number();
}

inline Json exponent_json(double p) { return std::isinf(p) ? Json("inf") : Json(p); }

/// {p, dim, spectral: [{v, w}]}; the spectral atoms are normalised on load.
inline DpBall parse_dpball(const JsonNode& node)
{
    const double p = parse_exponent(node["p"]);
    const std::size_t n = node["dim"].count();
    const JsonNode atoms = node["spectral"];
    std::vector<WeightedDirection> a;
    for (std::size_t i = 0; i < atoms.size(); ++i) {
        const JsonNode v = atoms[i]["v"];
        const Vec raw = v.vec(n);
        if (norm2(raw) == 0.0) v.fail("spectral direction must be nonzero");
        a.push_back({normalized(raw), atoms[i]["w"].number()});
    }
    return at_path(node, [&] { return DpBall(p, SphereMeasure(n, std::move(a))); });
}

inline Json dpball_json(const DpBall& l)
{
    Json j;
    j["p"] = exponent_json(l.p());
    j["dim"] = l.dim();
    j["spectral"] = atoms_json(l.spectral().atoms());
    j["bounded"] = l.bounded();
    return j;
}

/// {alpha, dim, atoms: [{v, w}]}.
inline StableSpec parse_stable_spec(const JsonNode& node)
{
    StableSpec s;
    s.alpha = node["alpha"].number();
    s.dim = node["dim"].count();
    const JsonNode atoms = node["atoms"];
    for (std::size_t i = 0; i < atoms.size(); ++i) s.atoms.push_back({atoms[i]["v"].vec(s.dim), atoms[i]["w"].number()});
    at_path(node, [&] { s.validate(); });
    return s;
}

inline Json stable_spec_json(const StableSpec& s)
{
    Json j;
    j["alpha"] = s.alpha;
    j["dim"] = s.dim;
    j["atoms"] = atoms_json(s.atoms);
    return j;
}

// ---------------------------------------------------------------------------
// files

/// Parses a file; syntax errors report line and column, schema errors the
/// JSON path, both prefixed with the file name.
inline Json read_json_file(const std::string& file)
{
    std::ifstream in(file);
    if (!in) throw Error(file + ": cannot open file");
    std::stringstream ss;
    ss << in.rdbuf();
    const std::string text = ss.str();
    try {
        return Json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        std::size_t line = 1, col = 1;
        for (std::size_t i = 0; i + 1 < e.byte && i < text.size(); ++i) {
            if (text[i] == '\n') {
                ++line;
                col = 1;
            } else {
                ++col;
            }
        }
        throw Error(file + ":" + std::to_string(line) + ":" + std::to_string(col) + ": JSON syntax error");
    }
}

template <class Parser>
auto load_file(const std::string& file, Parser&& parse)
{
    const Json j = read_json_file(file);
    try {
        return parse(JsonNode(j, "$"));
    } catch (const SchemaError& e) {
        throw Error(file + ": " + e.what());
    }
}

}  // namespace dmc
