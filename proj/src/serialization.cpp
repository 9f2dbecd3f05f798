#include "grpd/serialization.hpp"

#include <fstream>
#include <sstream>

namespace grpd {

namespace {

[[noreturn]] void bad(const std::string& path, const std::string& msg) {
    throw SchemaError(path, msg);
}

int get_int(const Json& j, const std::string& key, const std::string& path) {
    if (!j.contains(key) || !j[key].is_number_integer()) bad(path + "/" + key, "expected integer");
    return j[key].get<int>();
}

const Json& get_array(const Json& j, const std::string& key, const std::string& path) {
    if (!j.contains(key) || !j[key].is_array()) bad(path + "/" + key, "expected array");
    return j[key];
}

std::string get_string(const Json& j, const std::string& key, const std::string& path) {
    if (!j.contains(key) || !j[key].is_string()) bad(path + "/" + key, "expected string");
    return j[key].get<std::string>();
}

void check_format(const Json& j, const std::string& path) {
    if (!j.is_object()) bad(path, "expected object");
    if (!j.contains("format") || j["format"] != 1) bad(path + "/format", "expected format 1");
}

Rational rational_at(const Json& j, const std::string& path) {
    if (!j.is_string()) bad(path, "expected rational string");
    try {
        return parse_rational(j.get<std::string>());
    } catch (const std::invalid_argument& e) {
        bad(path, e.what());
    }
}

std::vector<std::vector<int>> int_table(const Json& j, const std::string& path) {
    std::vector<std::vector<int>> out;
    if (!j.is_array()) bad(path, "expected array of arrays");
    for (size_t i = 0; i < j.size(); ++i) {
        const auto& row = j[i];
        if (!row.is_array()) bad(path + "/" + std::to_string(i), "expected array");
        std::vector<int> r;
        for (size_t k = 0; k < row.size(); ++k) {
            if (!row[k].is_number_integer())
                bad(path + "/" + std::to_string(i) + "/" + std::to_string(k), "expected integer");
            r.push_back(row[k].get<int>());
        }
        out.push_back(std::move(r));
    }
    return out;
}

GroupoidHandle groupoid_from_kind(const Json& j, const std::string& path);

GroupoidHandle load_groupoid_inner(const Json& j, const std::string& path) {
    check_format(j, path);
    if (j.contains("kind")) return groupoid_from_kind(j, path);

    FiniteGroupoid g;
    g.num_objects = get_int(j, "objects", path);
    const Json& arrows = get_array(j, "arrows", path);
    const int na = static_cast<int>(arrows.size());
    g.src.resize(na);
    g.tgt.resize(na);
    std::vector<char> seen(na, 0);
    for (int i = 0; i < na; ++i) {
        const std::string ap = path + "/arrows/" + std::to_string(i);
        const int id = get_int(arrows[i], "id", ap);
        if (id < 0 || id >= na || seen[id]) bad(ap + "/id", "arrow ids must be 0..N-1, unique");
        seen[id] = 1;
        g.src[id] = get_int(arrows[i], "src", ap);
        g.tgt[id] = get_int(arrows[i], "tgt", ap);
    }
    g.comp.assign(na, std::vector<int>(na, -1));
    const Json& comp = get_array(j, "compose", path);
    for (size_t i = 0; i < comp.size(); ++i) {
        const std::string cp = path + "/compose/" + std::to_string(i);
        if (!comp[i].is_array() || comp[i].size() != 3) bad(cp, "expected [g,h,gh]");
        const int a = comp[i][0].get<int>(), b = comp[i][1].get<int>(), c = comp[i][2].get<int>();
        if (a < 0 || a >= na || b < 0 || b >= na || c < 0 || c >= na) bad(cp, "index out of range");
        g.comp[a][b] = c;
    }
    const Json& inv = get_array(j, "inv", path);
    for (const auto& x : inv) g.inv.push_back(x.get<int>());
    const Json& unit = get_array(j, "unit", path);
    for (const auto& x : unit) g.unit.push_back(x.get<int>());
    try {
        return std::make_shared<const FiniteGroupoid>(validate_groupoid(std::move(g)));
    } catch (const GroupoidError& e) {
        bad(path, std::string("groupoid validation failed: ") + e.what());
    }
}

GroupoidHandle groupoid_from_kind(const Json& j, const std::string& path) {
    const std::string kind = get_string(j, "kind", path);
    try {
        if (kind == "pair")
            return std::make_shared<const FiniteGroupoid>(pair_groupoid(get_int(j, "n", path)));
        if (kind == "group")
            return std::make_shared<const FiniteGroupoid>(
                group_groupoid(int_table(get_array(j, "cayley", path), path + "/cayley")));
        if (kind == "action") {
            auto grp = load_groupoid_inner(j.at("group"), path + "/group");
            return std::make_shared<const FiniteGroupoid>(action_groupoid(
                *grp, int_table(get_array(j, "act", path), path + "/act")));
        }
        if (kind == "cech")
            return std::make_shared<const FiniteGroupoid>(
                cech_groupoid(get_int(j, "points", path),
                              int_table(get_array(j, "cover", path), path + "/cover")));
        if (kind == "product") {
            auto a = load_groupoid_inner(j.at("left"), path + "/left");
            auto b = load_groupoid_inner(j.at("right"), path + "/right");
            return std::make_shared<const FiniteGroupoid>(product_groupoid(*a, *b));
        }
        if (kind == "union") {
            auto a = load_groupoid_inner(j.at("left"), path + "/left");
            auto b = load_groupoid_inner(j.at("right"), path + "/right");
            return std::make_shared<const FiniteGroupoid>(disjoint_union(*a, *b));
        }
        if (kind == "opposite") {
            auto a = load_groupoid_inner(j.at("of"), path + "/of");
            return std::make_shared<const FiniteGroupoid>(opposite_groupoid(*a));
        }
        if (kind == "full-sub") {
            auto a = load_groupoid_inner(j.at("of"), path + "/of");
            std::vector<int> objs;
            for (const auto& x : get_array(j, "objects", path)) objs.push_back(x.get<int>());
            return std::make_shared<const FiniteGroupoid>(full_subgroupoid(*a, objs));
        }
        if (kind == "gauge") {
            RightGroupSet ps;
            ps.group = load_groupoid_inner(j.at("group"), path + "/group");
            ps.act = int_table(get_array(j, "act", path), path + "/act");
            ps.num_points = static_cast<int>(ps.act.size());
            if (j.contains("base")) {
                std::vector<int> base;
                for (const auto& x : get_array(j, "base", path)) base.push_back(x.get<int>());
                ps.base = std::move(base);
            }
            return std::make_shared<const FiniteGroupoid>(gauge_groupoid(ps));
        }
    } catch (const GroupoidError& e) {
        bad(path, std::string("constructor failed: ") + e.what());
    } catch (const Json::exception& e) {
        bad(path, std::string("missing constructor parameter: ") + e.what());
    }
    bad(path + "/kind", "unknown constructor kind '" + kind + "'");
}

}  // namespace

GroupoidHandle load_groupoid(const Json& j) { return load_groupoid_inner(j, "$"); }

Json save_groupoid(const FiniteGroupoid& g) {
    Json j;
    j["format"] = 1;
    j["objects"] = g.num_objects;
    Json arrows = Json::array();
    for (int a = 0; a < g.num_arrows(); ++a)
        arrows.push_back(Json{{"id", a}, {"src", g.src[a]}, {"tgt", g.tgt[a]}});
    j["arrows"] = std::move(arrows);
    Json comp = Json::array();
    for (int a = 0; a < g.num_arrows(); ++a)
        for (int b = 0; b < g.num_arrows(); ++b)
            if (g.comp[a][b] >= 0) comp.push_back(Json::array({a, b, g.comp[a][b]}));
    j["compose"] = std::move(comp);
    j["inv"] = g.inv;
    j["unit"] = g.unit;
    return j;
}

HaarSystem load_haar(const Json& j, const FiniteGroupoid& g) {
    check_format(j, "$");
    const Json& w = get_array(j, "weights", "$");
    std::vector<Rational> weights;
    for (size_t i = 0; i < w.size(); ++i)
        weights.push_back(rational_at(w[i], "$/weights/" + std::to_string(i)));
    try {
        return validate_haar(g, std::move(weights));
    } catch (const HaarError& e) {
        bad("$/weights", std::string("Haar validation failed: ") + e.what());
    }
}

Json save_haar(const HaarSystem& h) {
    Json j;
    j["format"] = 1;
    Json w = Json::array();
    for (const auto& x : h.weight) w.push_back(format_rational(x));
    j["weights"] = std::move(w);
    return j;
}

namespace {

BibundleHandle bibundle_from_kind(const Json& j, const std::string& path) {
    const std::string kind = get_string(j, "kind", path);
    try {
        if (kind == "identity") return identity_bibundle(load_groupoid_inner(j.at("of"), path + "/of"));
        if (kind == "terminal") return terminal_bibundle(load_groupoid_inner(j.at("of"), path + "/of"));
        if (kind == "anchor") return anchor_bibundle(load_groupoid_inner(j.at("of"), path + "/of"));
        if (kind == "diagonal") return diagonal_bibundle(load_groupoid_inner(j.at("of"), path + "/of"));
        if (kind == "point")
            return point_bibundle(load_groupoid_inner(j.at("of"), path + "/of"),
                                  get_int(j, "object", path));
        if (kind == "hom") {
            GroupoidHom f;
            f.domain = load_groupoid_inner(j.at("domain"), path + "/domain");
            f.codomain = load_groupoid_inner(j.at("codomain"), path + "/codomain");
            for (const auto& x : get_array(j, "phi0", path)) f.phi0.push_back(x.get<int>());
            for (const auto& x : get_array(j, "phi1", path)) f.phi1.push_back(x.get<int>());
            return hom_bibundle(validate_hom(std::move(f)));
        }
        if (kind == "opposite") return opposite_bibundle(load_bibundle(j.at("of")));
        if (kind == "compose")
            return compose_bibundles(load_bibundle(j.at("left")), load_bibundle(j.at("right")))
                .bundle;
    } catch (const GroupoidError& e) {
        bad(path, std::string("constructor failed: ") + e.what());
    } catch (const BibundleError& e) {
        bad(path, std::string("constructor failed: ") + e.what());
    } catch (const Json::exception& e) {
        bad(path, std::string("missing constructor parameter: ") + e.what());
    }
    bad(path + "/kind", "unknown bibundle kind '" + kind + "'");
}

}  // namespace

BibundleHandle load_bibundle(const Json& j) {
    const std::string path = "$";
    check_format(j, path);
    if (j.contains("kind")) return bibundle_from_kind(j, path);
    Bibundle b;
    b.left_groupoid = load_groupoid_inner(j.at("left"), path + "/left");
    b.right_groupoid = load_groupoid_inner(j.at("right"), path + "/right");
    b.num_points = get_int(j, "points", path);
    for (const auto& x : get_array(j, "l", path)) b.l.push_back(x.get<int>());
    for (const auto& x : get_array(j, "r", path)) b.r.push_back(x.get<int>());
    b.lact.assign(b.left_groupoid->num_arrows(), std::vector<int>(b.num_points, -1));
    for (const auto& row : int_table(get_array(j, "lact", path), path + "/lact")) {
        if (row.size() != 3) bad(path + "/lact", "expected [g,p,gp] triples");
        if (row[0] < 0 || row[0] >= b.left_groupoid->num_arrows() || row[1] < 0 ||
            row[1] >= b.num_points)
            bad(path + "/lact", "index out of range");
        b.lact[row[0]][row[1]] = row[2];
    }
    b.ract.assign(b.num_points, std::vector<int>(b.right_groupoid->num_arrows(), -1));
    for (const auto& row : int_table(get_array(j, "ract", path), path + "/ract")) {
        if (row.size() != 3) bad(path + "/ract", "expected [p,h,ph] triples");
        if (row[0] < 0 || row[0] >= b.num_points || row[1] < 0 ||
            row[1] >= b.right_groupoid->num_arrows())
            bad(path + "/ract", "index out of range");
        b.ract[row[0]][row[1]] = row[2];
    }
    try {
        return validate_bibundle(std::move(b));
    } catch (const BibundleError& e) {
        bad(path, std::string("bibundle validation failed: ") + e.what());
    }
}

Json save_bibundle(const Bibundle& b) {
    Json j;
    j["format"] = 1;
    j["left"] = save_groupoid(*b.left_groupoid);
    j["right"] = save_groupoid(*b.right_groupoid);
    j["points"] = b.num_points;
    j["l"] = b.l;
    j["r"] = b.r;
    Json lact = Json::array();
    for (int g = 0; g < b.left_groupoid->num_arrows(); ++g)
        for (int p = 0; p < b.num_points; ++p)
            if (b.lact[g][p] >= 0) lact.push_back(Json::array({g, p, b.lact[g][p]}));
    j["lact"] = std::move(lact);
    Json ract = Json::array();
    for (int p = 0; p < b.num_points; ++p)
        for (int h = 0; h < b.right_groupoid->num_arrows(); ++h)
            if (b.ract[p][h] >= 0) ract.push_back(Json::array({p, h, b.ract[p][h]}));
    j["ract"] = std::move(ract);
    return j;
}

std::vector<Scalar> load_coeffs(const Json& j, int expected_dim) {
    check_format(j, "$");
    const Json& c = get_array(j, "coeffs", "$");
    if (expected_dim >= 0 && static_cast<int>(c.size()) != expected_dim)
        bad("$/coeffs", "expected " + std::to_string(expected_dim) + " coefficients");
    std::vector<Scalar> out;
    for (size_t i = 0; i < c.size(); ++i) {
        const std::string p = "$/coeffs/" + std::to_string(i);
        if (!c[i].is_object()) bad(p, "expected {re, im}");
        Scalar s;
        if (c[i].contains("re")) s.re = rational_at(c[i]["re"], p + "/re");
        if (c[i].contains("im")) s.im = rational_at(c[i]["im"], p + "/im");
        out.push_back(std::move(s));
    }
    return out;
}

Json save_coeffs(const std::vector<Scalar>& v) {
    Json j;
    j["format"] = 1;
    Json c = Json::array();
    for (const auto& s : v)
        c.push_back(Json{{"re", format_rational(s.re)}, {"im", format_rational(s.im)}});
    j["coeffs"] = std::move(c);
    return j;
}

PolytopalDisk load_disk(const Json& j) {
    check_format(j, "$");
    PolytopalDisk d;
    d.dimension = get_int(j, "dimension", "$");
    const Json& gens = get_array(j, "generators", "$");
    for (size_t i = 0; i < gens.size(); ++i) {
        const std::string p = "$/generators/" + std::to_string(i);
        if (!gens[i].is_array()) bad(p, "expected array");
        std::vector<Rational> g;
        for (size_t k = 0; k < gens[i].size(); ++k)
            g.push_back(rational_at(gens[i][k], p + "/" + std::to_string(k)));
        if (static_cast<int>(g.size()) != d.dimension) bad(p, "generator arity mismatch");
        d.generators.push_back(std::move(g));
    }
    return d;
}

Json save_disk(const PolytopalDisk& d) {
    Json j;
    j["format"] = 1;
    j["dimension"] = d.dimension;
    Json gens = Json::array();
    for (const auto& g : d.generators) {
        Json row = Json::array();
        for (const auto& x : g) row.push_back(format_rational(x));
        gens.push_back(std::move(row));
    }
    j["generators"] = std::move(gens);
    return j;
}

RationalSequence load_sequence(const Json& j) {
    check_format(j, "$");
    RationalSequence s;
    const Json& lim = get_array(j, "limit", "$");
    for (size_t i = 0; i < lim.size(); ++i)
        s.limit.push_back(rational_at(lim[i], "$/limit/" + std::to_string(i)));
    const Json& terms = get_array(j, "terms", "$");
    for (size_t i = 0; i < terms.size(); ++i) {
        const std::string p = "$/terms/" + std::to_string(i);
        if (!terms[i].is_array()) bad(p, "expected array");
        std::vector<Rational> t;
        for (size_t k = 0; k < terms[i].size(); ++k)
            t.push_back(rational_at(terms[i][k], p + "/" + std::to_string(k)));
        s.terms.push_back(std::move(t));
    }
    return s;
}

Json save_sequence(const RationalSequence& s) {
    Json j;
    j["format"] = 1;
    Json lim = Json::array();
    for (const auto& x : s.limit) lim.push_back(format_rational(x));
    j["limit"] = std::move(lim);
    Json terms = Json::array();
    for (const auto& t : s.terms) {
        Json row = Json::array();
        for (const auto& x : t) row.push_back(format_rational(x));
        terms.push_back(std::move(row));
    }
    j["terms"] = std::move(terms);
    return j;
}

std::vector<Rational> parse_rational_csv(const std::string& line) {
    std::vector<Rational> out;
    std::stringstream ss(line);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
        // Trim blanks.
        const auto b = tok.find_first_not_of(" \t");
        const auto e = tok.find_last_not_of(" \t");
        if (b == std::string::npos) throw std::invalid_argument("empty entry in '" + line + "'");
        out.push_back(parse_rational(tok.substr(b, e - b + 1)));
    }
    if (out.empty()) throw std::invalid_argument("no entries in '" + line + "'");
    return out;
}

Json load_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw SchemaError("$", "cannot open " + path);
    try {
        return Json::parse(in);
    } catch (const Json::exception& e) {
        throw SchemaError("$", std::string("JSON parse error in ") + path + ": " + e.what());
    }
}

void write_json_file(const std::string& path, const Json& j) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write " + path);
    out << j.dump(2) << "\n";
}

std::string json_digest(const Json& j) {
    const std::string s = j.dump();
    std::uint64_t h = 1469598103934665603ull;
    for (unsigned char c : s) {
        h ^= c;
        h *= 1099511628211ull;
    }
    char buf[20];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

}  // namespace grpd
