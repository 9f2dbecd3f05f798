#pragma once

#include "grpd/bimodule.hpp"
#include "grpd/serialization.hpp"

#include <cstdint>
#include <functional>
#include <map>
#include <string>
#include <vector>

namespace grpd {

/// One worked example: a named construction with the certificates it is
/// expected to pass. run() evaluates every certificate and returns the
/// outcomes by name.
struct CatalogEntry {
    std::string name;
    std::string constructor;
    std::vector<std::string> expected;
    std::function<std::map<std::string, bool>()> run;
};

/// The release catalog: the worked examples, each with its certificate set.
std::vector<CatalogEntry> release_catalog();

/// Runs a catalog in the worker pool (curbed by GRPD_CONV_THREADS) and
/// aggregates a deterministic report, entries sorted by name. Failures are
/// recorded, not thrown. include_broken_fixture adds one intentionally
/// failing entry for exercising the reporting path.
Json run_catalog(const std::vector<CatalogEntry>& entries);
Json run_release_catalog(bool include_broken_fixture = false);

/// Seeded generators for the randomized property suites: composable
/// right-principal bibundle pairs and triples built from homomorphism
/// chains over small random groupoids, with random invariant weights.
/// Point counts stay at or below the given cap.
struct RandomPairInstance {
    BibundleHandle p, q;
    HaarSystem haar_g, haar_h, haar_k;
};

RandomPairInstance random_composable_pair(std::uint64_t seed, int max_points = 20);

struct RandomTripleInstance {
    BibundleHandle p, q, r;
    HaarSystem haar_g, haar_h, haar_k, haar_l;
};

RandomTripleInstance random_composable_triple(std::uint64_t seed, int max_points = 15);

/// Morita-suite entries for the acceptance run: every biprincipal catalog
/// bibundle with its Haar systems.
struct MoritaCatalogEntry {
    std::string name;
    BibundleHandle bundle;
    HaarSystem haar_left, haar_right;
};

std::vector<MoritaCatalogEntry> morita_catalog();

/// The Cech-to-space homomorphism used by the catalog and tests.
GroupoidHom cech_space_epimorphism(const GroupoidHandle& cech, int num_points,
                                   const std::vector<std::vector<int>>& cover);

}  // namespace grpd
