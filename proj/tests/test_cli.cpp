// End-to-end coverage of the command line: every subcommand through the
// real binary, with exit-code checks and golden reports.
//
// Usage: test_cli <grpdconv-binary> <data-dir>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

namespace {

int checks = 0, failures = 0;

void expect(bool ok, const std::string& what) {
    ++checks;
    if (!ok) {
        ++failures;
        std::cerr << "FAIL: " << what << "\n";
    }
}

struct RunResult {
    int exit_code = -1;
    std::string output;
};

std::string slurp(const std::string& path) {
    std::ifstream in(path);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

RunResult run(const std::string& cmd) {
    const std::string out_path = "/tmp/grpdconv_cli_out.txt";
    const int rc = std::system((cmd + " > " + out_path + " 2>&1").c_str());
    RunResult r;
    r.exit_code = WEXITSTATUS(rc);
    r.output = slurp(out_path);
    return r;
}

bool contains(const std::string& hay, const std::string& needle) {
    return hay.find(needle) != std::string::npos;
}

}  // namespace

int main(int argc, char** argv) {
    if (argc < 3) {
        std::cerr << "usage: test_cli <binary> <data-dir>\n";
        return 2;
    }
    const std::string bin = argv[1];
    const std::string data = argv[2];
    const auto at = [&](const std::string& f) { return data + "/" + f; };

    // validate: golden report, byte for byte.
    {
        RunResult r = run(bin + " validate " + at("pair3.json"));
        expect(r.exit_code == 0, "validate exit 0");
        expect(r.output == slurp(at("golden_validate_pair3.json")),
               "validate report matches golden");
    }
    // gauge: golden report.
    {
        RunResult r = run(bin + " gauge --disk " + at("disk_l1.json") + " --point '1/2,1/2'");
        expect(r.exit_code == 0, "gauge exit 0");
        expect(r.output == slurp(at("golden_gauge_midpoint.json")),
               "gauge report matches golden");
    }
    // mackey: harmonic decay fits slope -1.
    {
        RunResult r = run(bin + " mackey --seq " + at("seq_harmonic.json") + " --disk " +
                          at("disk_l1.json"));
        expect(r.exit_code == 0, "mackey exit 0");
        expect(contains(r.output, "\"convergent\": true"), "mackey reports convergence");
    }
    // algebra structure-constants + determinism across runs.
    {
        RunResult a = run(bin + " algebra structure-constants " + at("pair3.json"));
        RunResult b = run(bin + " algebra structure-constants " + at("pair3.json"));
        expect(a.exit_code == 0, "structure-constants exit 0");
        expect(a.output == b.output, "structure-constants reports are reproducible");
        expect(contains(a.output, "nonzero_products"), "structure constants listed");
    }
    // algebra iso-check: the parity basis certifies, a swap does not.
    {
        RunResult good = run(bin + " algebra iso-check --map " + at("map_z2_to_cxc.json") +
                             " " + at("z2.json") + " " + at("two_points.json"));
        expect(good.exit_code == 0, "iso-check certifies the parity basis");
        expect(contains(good.output, "\"multiplicative\": true"), "iso-check reports multiplicativity");
        RunResult bad = run(bin + " algebra iso-check --map " + at("map_swap.json") + " " +
                            at("z2.json") + " " + at("z2.json"));
        expect(bad.exit_code == 1, "iso-check rejects the swap");
        expect(contains(bad.output, "counterexample"), "failure carries a counterexample");
    }
    // algebra ideal-check via an inline span file.
    {
        const std::string span_path = "/tmp/grpdconv_span.json";
        std::ofstream(span_path)
            << R"({"format": 1, "vectors": [["0", "1", "0", "0"]]})";
        RunResult r = run(bin + " algebra ideal-check " + at("bib_identity_pair2.json"));
        // The groupoid argument must be a groupoid file, not a bibundle.
        expect(r.exit_code == 2, "ideal-check rejects a bibundle file");
        RunResult r2 = run(bin + " algebra ideal-check " + at("pair2.json") + " --span " +
                           span_path);
        expect(r2.exit_code == 1, "a non-ideal span exits 1");
        expect(contains(r2.output, "witness"), "non-ideal report has a witness");
    }
    // tau-check on the identity bibundle.
    {
        RunResult r = run(bin + " tau-check " + at("bib_identity_pair2.json") + " " +
                          at("bib_identity_pair2.json"));
        expect(r.exit_code == 0, "tau-check exit 0");
        expect(contains(r.output, "\"bijective\": true"), "tau-check certifies bijectivity");
    }
    // tensor dimensions.
    {
        RunResult r = run(bin + " tensor " + at("bib_identity_pair2.json") + " " +
                          at("bib_identity_pair2.json"));
        expect(r.exit_code == 0, "tensor exit 0");
        expect(contains(r.output, "\"dim\": 4"), "A (x)_A A has dimension 4 for pair(2)");
    }
    // morita-check passes on the Morita bibundle...
    {
        RunResult r = run(bin + " morita-check " + at("bib_terminal_pair2.json"));
        expect(r.exit_code == 0, "morita-check exit 0 on the pair bibundle");
    }
    // ...and fails with a witness on the non-principal one.
    {
        RunResult r = run(bin + " morita-check " + at("bib_nonprincipal.json"));
        expect(r.exit_code == 1, "morita-check exit 1 on non-principal input");
        expect(contains(r.output, "unreachable_pair"), "failure carries a witness");
        expect(contains(r.output, "\"pass\": false"), "report marks the failure");
    }
    // bibundle subcommands.
    {
        RunResult r = run(bin + " bibundle principal-check " + at("bib_nonprincipal.json"));
        expect(r.exit_code == 1, "principal-check exit 1");
        expect(contains(r.output, "\"fiber_transitive\": false"),
               "principal-check pinpoints the failing condition");
        RunResult c = run(bin + " bibundle compose " + at("bib_identity_pair2.json") + " " +
                          at("bib_identity_pair2.json"));
        expect(c.exit_code == 0, "compose exit 0");
        expect(contains(c.output, "\"points\": 4"), "compose reports the point count");
    }
    // catalog: exit 0, deterministic, golden, and the broken fixture flips it.
    {
        RunResult a = run(bin + " catalog");
        RunResult b = run(bin + " catalog");
        expect(a.exit_code == 0, "catalog exit 0");
        expect(a.output == b.output, "catalog reports are byte-identical");
        expect(a.output == slurp(at("golden_catalog.json")),
               "catalog report matches golden");
        RunResult broken = run(bin + " catalog --broken-fixture");
        expect(broken.exit_code == 1, "broken fixture exit 1");
        expect(contains(broken.output, "\"failures\": 1"), "exactly one failure recorded");
    }
    // dirac-run and torus-run smoke (shortened ranges keep this fast).
    {
        RunResult r = run(bin + " dirac-run --n 4..16");
        expect(r.exit_code == 0, "dirac-run exit 0");
        expect(contains(r.output, "rate_table"), "dirac-run carries the rate table");
        RunResult t = run(bin + " torus-run --theta golden --element 'u+v' --n-max 512");
        expect(t.exit_code == 0, "torus-run exit 0");
        expect(contains(t.output, "\"nu\": 2.0"), "torus-run reports nu = 2");
    }
    // Usage and schema errors exit 2.
    {
        expect(run(bin + " no-such-command").exit_code == 2, "unknown subcommand exit 2");
        expect(run(bin + " validate /no/such/file.json").exit_code == 2,
               "missing file exit 2");
        expect(run(bin + " validate " + at("bad_compose.json")).exit_code == 2,
               "malformed compose triple exit 2");
        expect(run(bin + " gauge --disk " + at("disk_l1.json")).exit_code == 2,
               "missing required option exit 2");
    }
    // --out writes the report to a file.
    {
        RunResult r = run(bin + " --out /tmp/grpdconv_report.json validate " + at("pair3.json"));
        expect(r.exit_code == 0, "--out exit 0");
        expect(contains(slurp("/tmp/grpdconv_report.json"), "\"pass\": true"),
               "--out file holds the report");
    }

    std::printf("%d checks, %d failures\n", checks, failures);
    return failures ? 1 : 0;
}
