// grpdconv: finite-groupoid convolution workbench command line.
//
// Exit codes: 0 all certificates in scope pass, 1 a certificate failed,
// 2 usage or schema error.

#include "grpd/bimodule.hpp"
#include "grpd/bornology.hpp"
#include "grpd/catalog.hpp"
#include "grpd/mollifier.hpp"
#include "grpd/nctorus.hpp"
#include "grpd/parallel.hpp"
#include "grpd/serialization.hpp"

#include <CLI11.hpp>

#include <chrono>
#include <cmath>
#include <iostream>

using namespace grpd;

namespace {

constexpr int kExitPass = 0;
constexpr int kExitCertificateFailure = 1;
constexpr int kExitUsage = 2;

struct Output {
    std::string out_path;
    bool timings = false;
    std::chrono::steady_clock::time_point start = std::chrono::steady_clock::now();

    int emit(Json report, bool pass) {
        report["pass"] = pass;
        if (timings) {
            const auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                                std::chrono::steady_clock::now() - start)
                                .count();
            report["timing_ms"] = static_cast<int>(ms);
        }
        if (out_path.empty())
            std::cout << report.dump(2) << "\n";
        else
            write_json_file(out_path, report);
        return pass ? kExitPass : kExitCertificateFailure;
    }
};

Json base_report(const std::string& command,
                 const std::vector<std::pair<std::string, Json>>& inputs) {
    Json j;
    j["command"] = command;
    Json digests;
    for (const auto& [name, content] : inputs) digests[name] = json_digest(content);
    j["input_digests"] = std::move(digests);
    return j;
}

Scalar scalar_from_json(const Json& v) {
    if (v.is_string()) return Scalar(parse_rational(v.get<std::string>()));
    if (v.is_number_integer()) return Scalar(v.get<int>());
    if (v.is_object()) {
        Scalar s;
        if (v.contains("re")) s.re = parse_rational(v["re"].get<std::string>());
        if (v.contains("im")) s.im = parse_rational(v["im"].get<std::string>());
        return s;
    }
    throw SchemaError("$", "expected a rational string or {re, im}");
}

Matrix load_matrix(const Json& j) {
    if (!j.is_object() || !j.contains("rows") || !j["rows"].is_array())
        throw SchemaError("$/rows", "expected a matrix with a rows array");
    Matrix m;
    for (const auto& row : j["rows"]) {
        std::vector<Scalar> r;
        for (const auto& v : row) r.push_back(scalar_from_json(v));
        m.push_back(std::move(r));
    }
    return m;
}

std::vector<std::vector<Scalar>> load_vectors(const Json& j) {
    if (!j.is_object() || !j.contains("vectors") || !j["vectors"].is_array())
        throw SchemaError("$/vectors", "expected a vectors array");
    std::vector<std::vector<Scalar>> out;
    for (const auto& row : j["vectors"]) {
        std::vector<Scalar> r;
        for (const auto& v : row) r.push_back(scalar_from_json(v));
        out.push_back(std::move(r));
    }
    return out;
}

HaarSystem haar_for(const FiniteGroupoid& g, const std::string& path) {
    if (path.empty()) return counting_haar(g);
    return load_haar(load_json_file(path), g);
}

Json witness_json(const std::vector<int>& w) {
    Json j = Json::array();
    for (int x : w) j.push_back(x);
    return j;
}

Json principality_json(const PrincipalityCertificate& c) {
    Json j;
    j["l_surjective"] = c.l_surjective;
    if (c.uncovered_object) j["uncovered_object"] = *c.uncovered_object;
    j["action_free"] = c.action_free;
    if (c.free_witness) j["freeness_witness"] = witness_json(*c.free_witness);
    j["fiber_transitive"] = c.fiber_transitive;
    if (c.unreachable_pair)
        j["unreachable_pair"] = Json::array({c.unreachable_pair->first, c.unreachable_pair->second});
    j["right_principal"] = c.ok();
    return j;
}

/// "u+v", "2u^3 v^-1 - 0.5", "i u" and friends. Terms are separated by top
/// level +/-; a term is an optional coefficient (float, optional trailing i)
/// followed by optional u-power and v-power.
TorusElement parse_torus_element(const std::string& text, const TorusElement& like) {
    TorusElement acc = like;
    acc.coeffs.clear();
    size_t i = 0;
    const auto skip_ws = [&] {
        while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i]))) ++i;
    };
    skip_ws();
    if (i == text.size()) throw std::invalid_argument("empty torus element");
    while (i < text.size()) {
        double sign = 1.0;
        skip_ws();
        if (text[i] == '+' || text[i] == '-') {
            sign = text[i] == '-' ? -1.0 : 1.0;
            ++i;
        }
        skip_ws();
        double mag = 1.0;
        bool have_num = false;
        {
            size_t j = i;
            while (j < text.size() &&
                   (std::isdigit(static_cast<unsigned char>(text[j])) || text[j] == '.'))
                ++j;
            if (j > i) {
                mag = std::stod(text.substr(i, j - i));
                have_num = true;
                i = j;
            }
        }
        std::complex<double> coeff(sign * mag, 0.0);
        skip_ws();
        if (i < text.size() && text[i] == 'i') {
            coeff = std::complex<double>(0.0, sign * mag);
            ++i;
        }
        const auto read_power = [&](char gen) -> int {
            skip_ws();
            if (i >= text.size() || text[i] != gen) return 0;
            ++i;
            if (i < text.size() && text[i] == '^') {
                ++i;
                size_t j = i;
                if (j < text.size() && (text[j] == '-' || text[j] == '+')) ++j;
                while (j < text.size() && std::isdigit(static_cast<unsigned char>(text[j]))) ++j;
                if (j == i) throw std::invalid_argument("malformed exponent");
                const int e = std::stoi(text.substr(i, j - i));
                i = j;
                return e;
            }
            return 1;
        };
        const int k = read_power('u');
        const int m = read_power('v');
        if (k == 0 && m == 0 && !have_num && std::abs(coeff - std::complex<double>(sign, 0.0)) == 0.0) {
            // Accept a bare "1".
        }
        skip_ws();
        TorusElement term = torus_monomial(like, k, m, coeff);
        acc = torus_add(acc, term);
        if (i < text.size() && text[i] != '+' && text[i] != '-')
            throw std::invalid_argument("unexpected character '" + std::string(1, text[i]) +
                                        "' in torus element");
    }
    return acc;
}

std::vector<int> parse_n_range(const std::string& text) {
    const auto dots = text.find("..");
    if (dots == std::string::npos) return {std::stoi(text)};
    int lo = std::stoi(text.substr(0, dots));
    int hi = std::stoi(text.substr(dots + 2));
    if (lo < 1 || hi < lo) throw std::invalid_argument("bad range " + text);
    std::vector<int> ns;
    for (int n = lo; n <= hi; n *= 2) ns.push_back(n);
    if (ns.back() != hi) ns.push_back(hi);
    return ns;
}

}  // namespace

int main(int argc, char** argv) {
    apply_thread_cap();
    CLI::App app{"finite groupoid convolution workbench"};
    app.require_subcommand(1);
    Output out;
    app.add_option("--out", out.out_path, "write the JSON report to a file");
    app.add_flag("--timings", out.timings,
                 "include wall-clock timings (reports stop being byte-reproducible)");

    // validate
    std::string g_path, haar_path;
    auto* validate = app.add_subcommand("validate", "validate a groupoid (and Haar) file");
    validate->add_option("groupoid", g_path)->required();
    validate->add_option("--haar", haar_path);

    // algebra
    auto* algebra = app.add_subcommand("algebra", "convolution algebra operations");
    algebra->require_subcommand(1);
    std::string alg_g, alg_haar;
    auto* sc = algebra->add_subcommand("structure-constants", "emit the exact basis products");
    sc->add_option("groupoid", alg_g)->required();
    sc->add_option("--haar", alg_haar);

    std::string iso_map, iso_a, iso_b, iso_haar_a, iso_haar_b;
    auto* iso = algebra->add_subcommand("iso-check", "certify a linear map as an algebra iso");
    iso->add_option("--map", iso_map)->required();
    iso->add_option("a", iso_a)->required();
    iso->add_option("b", iso_b)->required();
    iso->add_option("--haar-a", iso_haar_a);
    iso->add_option("--haar-b", iso_haar_b);

    std::string ideal_g, ideal_span, ideal_haar;
    auto* ideal = algebra->add_subcommand("ideal-check", "two-sided ideal test for a span");
    ideal->add_option("groupoid", ideal_g)->required();
    ideal->add_option("--span", ideal_span)->required();
    ideal->add_option("--haar", ideal_haar);

    // bibundle
    auto* bib = app.add_subcommand("bibundle", "bibundle operations");
    bib->require_subcommand(1);
    std::string pc_path;
    auto* pc = bib->add_subcommand("principal-check", "P1-P3 via the characteristic map");
    pc->add_option("bibundle", pc_path)->required();

    std::string comp_p, comp_q;
    bool comp_permissive = false;
    auto* comp = bib->add_subcommand("compose", "diagonal-quotient composition");
    comp->add_option("p", comp_p)->required();
    comp->add_option("q", comp_q)->required();
    comp->add_flag("--permissive", comp_permissive,
                   "compute the raw set quotient even when P is not right principal");

    std::string bmor_path;
    auto* bmor = bib->add_subcommand("morita-check", "biprincipality plus both tau composites");
    bmor->add_option("bibundle", bmor_path)->required();

    // tensor / tau-check / morita-check
    std::string t_p, t_q, t_hg, t_hh, t_hk;
    auto* tensor = app.add_subcommand(
        "tensor", "M(P) (x)_{A(H)} M(Q) for bibundle files P: G-H and Q: H-K");
    tensor->add_option("p", t_p)->required();
    tensor->add_option("q", t_q)->required();
    tensor->add_option("--haar-g", t_hg);
    tensor->add_option("--haar-h", t_hh);
    tensor->add_option("--haar-k", t_hk);

    std::string tau_p, tau_q, tau_hg, tau_hh, tau_hk;
    auto* tau = app.add_subcommand("tau-check", "certify the functoriality constraint");
    tau->add_option("p", tau_p)->required();
    tau->add_option("q", tau_q)->required();
    tau->add_option("--haar-g", tau_hg);
    tau->add_option("--haar-h", tau_hh);
    tau->add_option("--haar-k", tau_hk);

    std::string mor_path, mor_hg, mor_hh;
    auto* mor = app.add_subcommand("morita-check", "full Morita certification of a bibundle");
    mor->add_option("bibundle", mor_path)->required();
    mor->add_option("--haar-g", mor_hg);
    mor->add_option("--haar-h", mor_hh);

    // gauge / mackey
    std::string gauge_disk, gauge_point;
    auto* gauge = app.add_subcommand("gauge", "Minkowski gauge of a point in a disk");
    gauge->add_option("--disk", gauge_disk)->required();
    gauge->add_option("--point", gauge_point)->required();

    std::string mackey_seq, mackey_disk;
    auto* mackey = app.add_subcommand("mackey", "gauge sequence and decay-rate fit");
    mackey->add_option("--seq", mackey_seq)->required();
    mackey->add_option("--disk", mackey_disk)->required();

    // dirac-run
    std::string dirac_profile = "std", dirac_range = "4..64";
    auto* dirac = app.add_subcommand("dirac-run", "mollifier lab experiments");
    dirac->add_option("--profile", dirac_profile, "bump profile (std)");
    dirac->add_option("--n", dirac_range, "scale range lo..hi (doubling steps)");

    // torus-run
    std::string torus_theta = "golden", torus_elem = "u+v";
    int torus_nmax = 4000;
    double torus_tol = 1e-3;
    auto* torus = app.add_subcommand("torus-run", "noncommutative torus averaging experiment");
    torus->add_option("--theta", torus_theta, "golden, a float, or p/q");
    torus->add_option("--element", torus_elem);
    torus->add_option("--n-max", torus_nmax);
    torus->add_option("--tol", torus_tol);

    // catalog
    bool broken_fixture = false;
    std::uint64_t catalog_seed = 0;
    auto* cat = app.add_subcommand("catalog", "build and certify every catalog entry");
    cat->add_flag("--broken-fixture", broken_fixture,
                  "append an intentionally failing entry");
    cat->add_option("--seed", catalog_seed,
                    "seed echoed into the report (catalog entries are deterministic)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kExitPass : kExitUsage;
    }

    try {
        if (*validate) {
            Json gj = load_json_file(g_path);
            Json rep = base_report("validate", {{"groupoid", gj}});
            GroupoidHandle g = load_groupoid(gj);
            rep["objects"] = g->num_objects;
            rep["arrows"] = g->num_arrows();
            if (!haar_path.empty()) {
                Json hj = load_json_file(haar_path);
                load_haar(hj, *g);
                rep["haar"] = "valid";
            }
            const OrbitReport orep = orbits_and_isotropy(*g);
            rep["orbits"] = orep.num_orbits;
            return out.emit(rep, true);
        }
        if (*sc) {
            Json gj = load_json_file(alg_g);
            GroupoidHandle g = load_groupoid(gj);
            auto alg = make_algebra(g, haar_for(*g, alg_haar));
            AlgebraTable t = structure_constants(*alg);
            Json rep = base_report("algebra structure-constants", {{"groupoid", gj}});
            Json products = Json::array();
            for (int a = 0; a < t.dim; ++a)
                for (int b = 0; b < t.dim; ++b) {
                    const SparseVec& p = t.product(a, b);
                    if (p.empty()) continue;
                    Json row;
                    row["g"] = a;
                    row["h"] = b;
                    Json terms = Json::array();
                    for (const auto& [k, c] : p)
                        terms.push_back(Json{{"arrow", k},
                                             {"re", format_rational(c.re)},
                                             {"im", format_rational(c.im)}});
                    row["value"] = std::move(terms);
                    products.push_back(std::move(row));
                }
            rep["nonzero_products"] = std::move(products);
            return out.emit(rep, true);
        }
        if (*iso) {
            Json mj = load_json_file(iso_map), aj = load_json_file(iso_a),
                 bj = load_json_file(iso_b);
            GroupoidHandle ga = load_groupoid(aj), gb = load_groupoid(bj);
            auto alg_a = make_algebra(ga, haar_for(*ga, iso_haar_a));
            auto alg_b = make_algebra(gb, haar_for(*gb, iso_haar_b));
            IsoCertificate cert =
                check_algebra_iso(load_matrix(mj), structure_constants(*alg_a),
                                  structure_constants(*alg_b));
            Json rep = base_report("algebra iso-check",
                                   {{"map", mj}, {"a", aj}, {"b", bj}});
            rep["bijective"] = cert.bijective;
            rep["multiplicative"] = cert.multiplicative;
            if (cert.failing_pair)
                rep["counterexample"] =
                    Json::array({cert.failing_pair->first, cert.failing_pair->second});
            return out.emit(rep, cert.ok());
        }
        if (*ideal) {
            Json gj = load_json_file(ideal_g), sj = load_json_file(ideal_span);
            GroupoidHandle g = load_groupoid(gj);
            auto alg = make_algebra(g, haar_for(*g, ideal_haar));
            IdealReport r = ideal_check(*alg, load_vectors(sj));
            Json rep = base_report("algebra ideal-check", {{"groupoid", gj}, {"span", sj}});
            rep["left_ideal"] = r.left_ideal;
            rep["right_ideal"] = r.right_ideal;
            rep["two_sided"] = r.two_sided();
            rep["proper"] = r.proper;
            rep["span_dim"] = r.span_dim;
            if (r.witness) rep["witness"] = Json::array({r.witness->first, r.witness->second});
            rep["note"] =
                "smoothness of the submodule is automatic in finite dimension over a "
                "unital algebra and is not re-tested";
            return out.emit(rep, r.two_sided());
        }
        if (*pc) {
            Json bj = load_json_file(pc_path);
            BibundleHandle b = load_bibundle(bj);
            PrincipalityCertificate cert = is_right_principal(*b);
            Json rep = base_report("bibundle principal-check", {{"bibundle", bj}});
            rep["certificate"] = principality_json(cert);
            return out.emit(rep, cert.ok());
        }
        if (*comp) {
            Json pj = load_json_file(comp_p), qj = load_json_file(comp_q);
            BibundleHandle p = load_bibundle(pj), q = load_bibundle(qj);
            ComposedBibundle c = compose_bibundles(p, q, comp_permissive);
            Json rep = base_report("bibundle compose", {{"p", pj}, {"q", qj}});
            rep["points"] = c.bundle->num_points;
            rep["result"] = save_bibundle(*c.bundle);
            if (comp_permissive) rep["warning"] = "raw set quotient (permissive mode)";
            return out.emit(rep, true);
        }
        if (*bmor || *mor) {
            const std::string path = *bmor ? bmor_path : mor_path;
            Json bj = load_json_file(path);
            BibundleHandle b = load_bibundle(bj);
            HaarSystem hg = *mor ? haar_for(*b->left_groupoid, mor_hg)
                                 : counting_haar(*b->left_groupoid);
            HaarSystem hh = *mor ? haar_for(*b->right_groupoid, mor_hh)
                                 : counting_haar(*b->right_groupoid);
            MoritaCertificate cert = morita_check(b, hg, hh);
            Json rep = base_report("morita-check", {{"bibundle", bj}});
            rep["biprincipal"] = Json{{"right", principality_json(cert.biprincipal.right_side)},
                                      {"left", principality_json(cert.biprincipal.left_side)}};
            rep["left_tensor_iso"] = cert.left_tensor_iso;
            rep["right_tensor_iso"] = cert.right_tensor_iso;
            rep["left_composite_identity"] = cert.left_composite_identity;
            rep["right_composite_identity"] = cert.right_composite_identity;
            rep["left_tensor_dim"] = cert.left_tensor_dim;
            rep["right_tensor_dim"] = cert.right_tensor_dim;
            rep["notes"] = Json::array(
                {"finite model: projectivity relative to split epimorphisms coincides "
                 "with ordinary module projectivity",
                 "finite dimension: plain, strong, and split nondegeneracy coincide"});
            return out.emit(rep, cert.ok());
        }
        if (*tensor) {
            Json pj = load_json_file(t_p), qj = load_json_file(t_q);
            BibundleHandle p = load_bibundle(pj), q = load_bibundle(qj);
            ConvBimodule mp = conv_bimodule(p, haar_for(*p->left_groupoid, t_hg),
                                            haar_for(*p->right_groupoid, t_hh));
            ConvBimodule mq = conv_bimodule(q, haar_for(*q->left_groupoid, t_hh),
                                            haar_for(*q->right_groupoid, t_hk));
            TensorResult r = tensor_over(mp.module, mq.module);
            Json rep = base_report("tensor", {{"p", pj}, {"q", qj}});
            rep["ambient_dim"] = r.space.ambient_dim;
            rep["relation_rank"] = r.space.relations.rank();
            rep["dim"] = r.space.dim();
            Json basis = Json::array();
            for (int i = 0; i < r.space.dim(); ++i) basis.push_back(r.space.free_cols[i]);
            rep["quotient_basis_columns"] = std::move(basis);
            return out.emit(rep, true);
        }
        if (*tau) {
            Json pj = load_json_file(tau_p), qj = load_json_file(tau_q);
            BibundleHandle p = load_bibundle(pj), q = load_bibundle(qj);
            TauResult r = tau_hat(p, q, haar_for(*p->left_groupoid, tau_hg),
                                  haar_for(*p->right_groupoid, tau_hh),
                                  haar_for(*q->right_groupoid, tau_hk));
            Json rep = base_report("tau-check", {{"p", pj}, {"q", qj}});
            rep["composite_points"] = r.composed.bundle->num_points;
            rep["tensor_dim"] = r.tensor.space.dim();
            rep["representative_independent"] = r.representative_independent;
            rep["kills_relations"] = r.kills_relations;
            rep["left_linear"] = r.left_linear;
            rep["right_linear"] = r.right_linear;
            rep["bijective"] = r.bijective;
            return out.emit(rep, r.ok());
        }
        if (*gauge) {
            Json dj = load_json_file(gauge_disk);
            PolytopalDisk d = load_disk(dj);
            std::vector<Rational> v = parse_rational_csv(gauge_point);
            GaugeResult g = disked_hull_gauge(d, v);
            Json rep = base_report("gauge", {{"disk", dj}});
            rep["point"] = gauge_point;
            rep["finite"] = g.finite;
            if (g.finite) {
                rep["value"] = format_rational(g.value);
                Json w = Json::array();
                for (const auto& x : g.witness) w.push_back(format_rational(x));
                rep["witness"] = std::move(w);
                Json dual = Json::array();
                for (const auto& x : g.dual) dual.push_back(format_rational(x));
                rep["dual"] = std::move(dual);
            } else {
                rep["value"] = "inf";
            }
            return out.emit(rep, true);
        }
        if (*mackey) {
            Json sj = load_json_file(mackey_seq), dj = load_json_file(mackey_disk);
            RationalSequence s = load_sequence(sj);
            PolytopalDisk d = load_disk(dj);
            MackeyReport r = mackey_rate(s.terms, s.limit, d);
            Json rep = base_report("mackey", {{"seq", sj}, {"disk", dj}});
            Json gs = Json::array();
            for (const auto& g : r.gauges) gs.push_back(format_rational(g));
            rep["gauges"] = std::move(gs);
            rep["all_zero"] = r.all_zero;
            rep["slope"] = r.slope;
            rep["convergent"] = r.convergent;
            return out.emit(rep, true);
        }
        if (*dirac) {
            if (dirac_profile != "std")
                throw CLI::ValidationError("--profile", "only the std profile is built in");
            const std::vector<int> ns = parse_n_range(dirac_range);
            BumpProfile eps = make_bump_profile(1);
            std::vector<DiracTestFunction> fs = {
                {"constant", [](double) { return 1.0; }, 0.0},
                {"linear", [](double y) { return y; }, 1.0},
                {"cos", [](double y) { return std::cos(y); }, 1.0},
                {"shifted-sin", [](double y) { return std::sin(y + 0.3); }, 1.0},
            };
            DiracRateReport rate = dirac_rate_experiment(fs, eps, ns);
            auto g = [](double x) {
                const double t = (x - 1.5) / 1.2;
                return t * t >= 1 ? 0.0 : std::exp(-1.0 / (1.0 - t * t));
            };
            DecayReport fiber = fiber_dirac_experiment(
                [&](double x, double y) { return g(x) * std::cos(2.0 * y); },
                [](double x, double y) { return 1.0 + 0.25 * (x * x + y * y); }, eps, ns);
            SampledFunction a = sample_function(
                [](double x) { return x * x >= 1.0 ? 0.0 : std::exp(-1.0 / (1.0 - x * x)); },
                -2.0, 2.0, 2561);
            DecayReport group = group_approx_unit_demo(a, eps, ns);

            Json rep = base_report("dirac-run", {});
            rep["profile"] = "std";
            rep["n_values"] = ns;
            rep["c_constant"] = rate.c_constant;
            Json rows = Json::array();
            for (const auto& row : rate.rows)
                rows.push_back(Json{{"name", row.name},
                                    {"errors", row.errors},
                                    {"ratios", row.ratios},
                                    {"bound_holds", row.bound_holds}});
            rep["rate_table"] = std::move(rows);
            const auto decay_json = [](const DecayReport& d) {
                return Json{{"errors", d.errors},
                            {"errors_doubled", d.errors_doubled},
                            {"max_doubling_change", d.max_doubling_change},
                            {"max_norm_deviation", d.max_norm_deviation},
                            {"eventually_monotone", d.eventually_monotone},
                            {"below_target", d.below_target},
                            {"ok", d.ok()}};
            };
            rep["fiber_dirac"] = decay_json(fiber);
            rep["group_approx_unit"] = decay_json(group);
            return out.emit(rep, rate.all_hold && fiber.ok() && group.ok());
        }
        if (*torus) {
            TorusElement like;
            if (torus_theta == "golden") {
                like = torus_zero((std::sqrt(5.0) - 1.0) / 2.0);
            } else if (torus_theta.find('/') != std::string::npos) {
                const Rational r = parse_rational(torus_theta);
                like = torus_zero_rational(numerator(r).convert_to<long>(),
                                           denominator(r).convert_to<long>());
            } else {
                like = torus_zero(std::stod(torus_theta));
            }
            TorusElement a = parse_torus_element(torus_elem, like);
            Json rep = base_report("torus-run", {});
            rep["theta"] = like.theta;
            rep["element"] = torus_elem;
            AveragingReport avg = averaging_report(a, 8);
            Json modes = Json::array();
            for (const auto& row : avg.rows)
                modes.push_back(Json{{"k", row.k},
                                     {"m", row.m},
                                     {"phi1_factor", row.phi1_factor},
                                     {"phi2_factor", row.phi2_factor}});
            rep["suppression_at_n8"] = std::move(modes);
            rep["closed_vs_literal_dev"] = avg.max_literal_dev;
            SimplicityReport sim = simplicity_experiment(a, torus_nmax, torus_tol);
            rep["nu"] = sim.nu;
            rep["n_values"] = sim.n_values;
            rep["residuals"] = sim.residuals;
            rep["reached"] = sim.reached;
            if (sim.reached) rep["first_below"] = sim.first_below;
            const bool literal_ok = avg.max_literal_dev < 1e-10;
            return out.emit(rep, sim.reached && literal_ok);
        }
        if (*cat) {
            Json body = run_release_catalog(broken_fixture);
            Json rep = base_report("catalog", {});
            rep["seed"] = catalog_seed;
            rep.update(body);
            return out.emit(rep, body["all_pass"].get<bool>());
        }
    } catch (const SchemaError& e) {
        std::cerr << "schema error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const CLI::ValidationError& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const GroupoidError& e) {
        std::cerr << "validation failed: " << e.what() << "\n";
        return kExitCertificateFailure;
    } catch (const HaarError& e) {
        std::cerr << "validation failed: " << e.what() << "\n";
        return kExitCertificateFailure;
    } catch (const BibundleError& e) {
        std::cerr << "validation failed: " << e.what() << "\n";
        return kExitCertificateFailure;
    } catch (const std::invalid_argument& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const Json::exception& e) {
        std::cerr << "schema error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitCertificateFailure;
    }
    return kExitUsage;
}
