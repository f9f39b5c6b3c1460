#include "ccdim/class_io.hpp"

#include <fstream>
#include <sstream>

#include "json.hpp"

namespace ccdim {

using nlohmann::json;

ConceptClass class_from_json(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::parse_error& e) {
        throw ParseError(std::string("class file: ") + e.what());
    }
    if (!j.contains("domain") || !j.contains("concepts"))
        throw ParseError("class file: missing 'domain' or 'concepts'");
    Domain d;
    for (const auto& l : j["domain"]) d.labels.push_back(l.get<std::string>());
    d.validate();
    std::vector<Concept> cs;
    int line = 0;
    for (const auto& w : j["concepts"]) {
        ++line;
        std::string s = w.get<std::string>();
        auto c = concept_parse(s, d.size());
        if (!c) {
            // Report the first offending character for the diagnostic.
            size_t off = 0;
            while (off < s.size() && (s[off] == '+' || s[off] == '-')) ++off;
            throw ParseError("concept " + std::to_string(line) + " ('" + s + "'): " +
                             (s.size() != static_cast<size_t>(d.size())
                                  ? "length " + std::to_string(s.size()) + " != domain size " +
                                        std::to_string(d.size())
                                  : "bad character at offset " + std::to_string(off)));
        }
        cs.push_back(*c);
    }
    try {
        return ConceptClass(std::move(d), std::move(cs));
    } catch (const std::invalid_argument& e) {
        throw ParseError(std::string("class file: ") + e.what());
    }
}

ConceptClass class_from_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open class file: " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return class_from_json(ss.str());
}

std::string class_to_json(const ConceptClass& c) {
    json j;
    j["domain"] = c.domain().labels;
    std::vector<std::string> words;
    for (const auto& x : c.concepts()) words.push_back(concept_str(x, c.n()));
    j["concepts"] = words;
    return j.dump(2);
}

static json vec_json(const Vec& v) {
    json a = json::array();
    for (const auto& x : v) a.push_back(rat_str(x));
    return a;
}

std::string chain_complex_to_json(const ChainComplex& k) {
    json j;
    j["kind"] = k.kind() == ChainComplex::Kind::delta ? "delta" : "gamma";
    j["level"] = 1;
    json verts = json::array();
    for (const auto& h : k.verts()) {
        json v;
        v["label"] = partial_str(h, k.n());
        v["coords"] = vec_json(k.coord(h));
        verts.push_back(v);
    }
    j["vertices"] = verts;
    json faces = json::array();
    for (const auto& mc : k.maximal_chains()) {
        json f = json::array();
        for (const auto& h : mc.elems) f.push_back(k.vert_index(h));
        faces.push_back(f);
    }
    j["maximal_faces"] = faces;
    return j.dump(2);
}

std::string geo_complex_to_json(const GeoComplex& g) {
    json j;
    j["level"] = g.level;
    json verts = json::array();
    for (const auto& v : g.verts) verts.push_back(vec_json(v));
    j["vertices"] = verts;
    j["maximal_faces"] = g.maximal;
    return j.dump(2);
}

std::string geo_complex_to_off(const GeoComplex& g) {
    if (g.verts.empty() || g.verts[0].size() != 3)
        throw std::invalid_argument("OFF export requires |X| = 3");
    // Top-dimensional faces only; OFF takes polygons, we emit the 2-faces and
    // draw edges as degenerate polygons.
    std::vector<std::vector<int>> polys;
    for (const auto& f : g.maximal)
        if (f.size() >= 2) polys.push_back(f);
    std::ostringstream out;
    out << "OFF\n" << g.verts.size() << " " << polys.size() << " 0\n";
    for (const auto& v : g.verts) {
        for (size_t i = 0; i < 3; ++i)
            out << (i ? " " : "") << v[i].get_d();
        out << "\n";
    }
    for (const auto& f : polys) {
        out << f.size();
        for (int id : f) out << " " << id;
        out << "\n";
    }
    return out.str();
}

}  // namespace ccdim
