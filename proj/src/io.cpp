#include "unlearn/io.hpp"

#include <cmath>
#include <cstdlib>
#include <fstream>
#include <memory>
#include <sstream>

#include "unlearn/geometry.hpp"
#include "unlearn/instances.hpp"

namespace unlearn {

namespace {

std::string line_col(const std::string& text, std::size_t byte) {
    std::size_t line = 1, col = 1;
    for (std::size_t i = 0; i < byte && i < text.size(); ++i) {
        if (text[i] == '\n') {
            ++line;
            col = 1;
        } else {
            ++col;
        }
    }
    return "line " + std::to_string(line) + ", column " + std::to_string(col);
}

int get_int(const json& j, const char* key) {
    if (!j.contains(key) || !j.at(key).is_number_integer()) {
        throw UsageError(std::string("expected integer field '") + key + "'");
    }
    return j.at(key).get<int>();
}

Rational rational_of(const json& v) {
    if (v.is_number_integer()) return Rational(v.get<long>());
    if (v.is_string()) return parse_rational(v.get<std::string>());
    throw UsageError("coordinates must be integers or \"p/q\" strings");
}

std::vector<RationalPoint> points_of_json(const json& j) {
    if (j.is_object() && j.contains("generator")) {
        const json& g = j.at("generator");
        if (g.value("kind", "") != "simplex-faces") throw UsageError("unknown domain generator");
        return simplex_face_domain(get_int(g, "d"), get_int(g, "k"));
    }
    if (!j.is_array()) throw UsageError("domain must be a list of coordinate vectors or a generator");
    std::vector<RationalPoint> pts;
    for (const auto& p : j) {
        if (!p.is_array()) throw UsageError("domain point must be a list of coordinates");
        RationalPoint pt;
        for (const auto& c : p) pt.push_back(rational_of(c));
        pts.push_back(pt);
    }
    return pts;
}

ClassHandle from_generator(const json& g, const json& whole, std::mt19937_64& rng) {
    const std::string kind = g.value("kind", "");
    if (kind == "thresholds") return thresholds_1d(get_int(g, "m"));
    if (kind == "parity") return parity_class(get_int(g, "d"));
    if (kind == "all-labelings") {
        int m = get_int(g, "m");
        if (m <= 6) return all_labelings(m);
        return ClassHandle(std::make_shared<const AllLabelingsOracle>(m));
    }
    if (kind == "tilu-ub") return tilu_ub_class(get_int(g, "d"), get_int(g, "size"));
    if (kind == "random") return random_class(get_int(g, "m"), get_int(g, "h"), rng);
    if (kind == "vclb") {
        int t = g.contains("inv_beta") ? get_int(g, "inv_beta") : 0;
        if (!t && g.contains("beta")) t = static_cast<int>(std::lround(1.0 / g.at("beta").get<double>()));
        if (!t) throw UsageError("vclb generator needs beta or inv_beta");
        return vclb_instance(t, get_int(g, "m")).cls;
    }
    if (kind == "halfspace") {
        const int d = get_int(g, "d");
        std::vector<RationalPoint> pts;
        if (g.contains("domain")) pts = points_of_json(g.at("domain"));
        else if (whole.contains("domain")) pts = points_of_json(whole.at("domain"));
        else throw UsageError("halfspace class needs a domain");
        return ClassHandle(std::make_shared<const HalfspaceOracle>(d, pts));
    }
    throw UsageError("unknown class generator '" + kind + "'");
}

}  // namespace

json parse_json_text(const std::string& text, const std::string& origin) {
    try {
        return json::parse(text);
    } catch (const json::parse_error& e) {
        throw UsageError(origin + ": malformed JSON at " + line_col(text, e.byte == 0 ? 0 : e.byte - 1));
    }
}

json read_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw UsageError("cannot open '" + path + "'");
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_json_text(ss.str(), path);
}

std::uint64_t lab_seed() {
    const char* s = std::getenv("UNLEARN_LAB_SEED");
    if (!s || !*s) return 20240601ULL;
    char* end = nullptr;
    auto v = std::strtoull(s, &end, 10);
    if (*end != '\0') throw UsageError("UNLEARN_LAB_SEED must be an unsigned integer");
    return v;
}

std::mt19937_64 seeded_rng() { return std::mt19937_64(lab_seed()); }

ClassHandle class_from_json(const json& j, std::mt19937_64& rng) {
    if (!j.is_object()) throw UsageError("class file must hold an object");
    if (j.contains("generator")) return from_generator(j.at("generator"), j, rng);
    if (!j.contains("domain") || !j.contains("hypotheses")) throw UsageError("class needs 'domain' and 'hypotheses'");
    int m = 0;
    const json& dom = j.at("domain");
    if (dom.is_number_integer()) m = dom.get<int>();
    else m = static_cast<int>(points_of_json(dom).size());
    const json& hs = j.at("hypotheses");
    if (!hs.is_array()) throw UsageError("'hypotheses' must be a list of rows");
    std::vector<std::vector<int>> rows;
    for (const auto& r : hs) {
        if (!r.is_array()) throw UsageError("hypothesis row must be a list of bits");
        std::vector<int> row;
        for (const auto& b : r) {
            if (!b.is_number_integer()) throw UsageError("hypothesis entries must be 0 or 1");
            row.push_back(b.get<int>());
        }
        rows.push_back(row);
    }
    return FiniteClass(m, rows);
}

Dataset dataset_from_json(const json& j) {
    if (!j.is_object() || !j.contains("items") || !j.at("items").is_array()) throw UsageError("dataset needs an 'items' list");
    std::vector<LabeledPair> items;
    for (const auto& it : j.at("items")) {
        if (!it.is_object()) throw UsageError("dataset item must be an object");
        items.push_back({get_int(it, "x"), get_int(it, "y")});
    }
    return Dataset(items);
}

std::vector<Query> queries_from_json(const json& j) {
    auto one = [](const json& q) {
        if (!q.is_object() || !q.contains("indices") || !q.at("indices").is_array()) {
            throw UsageError("query needs an 'indices' list");
        }
        std::vector<ItemId> ids;
        for (const auto& v : q.at("indices")) {
            if (!v.is_number_integer()) throw UsageError("query indices must be integers");
            ids.push_back(v.get<int>());
        }
        return Query(ids);
    };
    if (j.is_object() && j.contains("queries")) {
        std::vector<Query> out;
        for (const auto& q : j.at("queries")) out.push_back(one(q));
        return out;
    }
    return {one(j)};
}

VsEncoding encoding_from_json(const json& j) {
    if (j.is_object() && j.contains("encoding")) return encoding_from_json(j.at("encoding"));
    if (!j.is_object() || !j.contains("pairs") || !j.contains("realizable")) throw UsageError("encoding needs 'realizable' and 'pairs'");
    VsEncoding e;
    e.realizable = j.at("realizable").get<bool>();
    for (const auto& z : j.at("pairs")) e.pairs.push_back({get_int(z, "x"), get_int(z, "y")});
    return e;
}

json to_json(const LabeledPair& z) { return {{"x", z.x}, {"y", z.y}}; }

json to_json(const std::vector<LabeledPair>& zs) {
    json a = json::array();
    for (const auto& z : zs) a.push_back(to_json(z));
    return a;
}

json to_json(const VsEncoding& e) { return {{"realizable", e.realizable}, {"pairs", to_json(e.pairs)}}; }

json to_json(const DimValue& v, bool witness) {
    json j = {{"value", v.value}, {"cap_exceeded", v.cap_exceeded}};
    if (witness) {
        if (!v.tree.empty()) j["tree"] = v.tree;
        j["witness"] = to_json(v.witness);
    }
    return j;
}

json to_json(const DimReport& r, bool witness) {
    json j;
    j["vc"] = to_json(r.vc, witness);
    j["star"] = to_json(r.star, witness);
    j["hollow_star"] = to_json(r.hollow_star, witness);
    j["eluder"] = to_json(r.eluder, witness);
    j["littlestone"] = r.littlestone ? to_json(*r.littlestone, witness) : json(nullptr);
    j["mis"] = r.mis ? to_json(*r.mis, witness) : json(nullptr);
    return j;
}

namespace {

template <class F>
auto with_origin(const std::string& path, F&& f) {
    try {
        return f(read_json_file(path));
    } catch (const UsageError& e) {
        std::string msg = e.what();
        if (msg.rfind(path, 0) == 0 || msg.rfind("cannot open", 0) == 0) throw;
        throw UsageError(path + ": " + msg);
    } catch (const json::exception& e) {
        throw UsageError(path + ": " + e.what());
    }
}

}  // namespace

ClassHandle load_class(const std::string& path, std::mt19937_64& rng) {
    return with_origin(path, [&](const json& j) { return class_from_json(j, rng); });
}

Dataset load_dataset(const std::string& path) {
    return with_origin(path, [](const json& j) { return dataset_from_json(j); });
}

std::vector<Query> load_queries(const std::string& path) {
    return with_origin(path, [](const json& j) { return queries_from_json(j); });
}

VsEncoding load_encoding(const std::string& path) {
    return with_origin(path, [](const json& j) { return encoding_from_json(j); });
}

}  // namespace unlearn
