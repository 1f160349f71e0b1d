#pragma once

#include <json.hpp>

#include "steiner/instability.hpp"

namespace steiner {

struct CensusConfig {
    uint32_t p = 31;
    int count = 10;
    int k_min = 10;
    int k_max = 10;
    uint32_t r = 1;
    uint64_t seed = 42;
    int workers = 1;
    int retry_cap = 10000;
};

struct CensusRecord {
    int id = 0;
    int k = 0;
    uint32_t r = 0;
    size_t t = 0; // h^0(J_Z(r+2))
    WKind w_kind = WKind::Finite;
    bool agreement = false;
    bool secant_ok = false;
    long ms = 0;
};

struct CensusResult {
    bool ok = false;
    int exit_code = 0; // 0 clean, 1 infeasible sampling, 2 oracle disagreement
    std::vector<CensusRecord> records;
    std::string failure;
    nlohmann::json reproducer; // minimized config of the first failure

    /// CSV: header, one row per record, trailing summary line.
    std::string csv() const;
};

/// Rejection-samples point configurations over F_p, builds the bundle, runs
/// both unstable oracles exhaustively and checks the secant lemma plus
/// classification coherence. Any disagreement stops the run with a
/// reproducer. Work is split over `workers` threads by configuration id;
/// output order is by id regardless of scheduling.
CensusResult run_census(const CensusConfig& cfg);

} // namespace steiner
