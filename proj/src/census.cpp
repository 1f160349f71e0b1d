#include "steiner/census.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <map>
#include <mutex>
#include <sstream>
#include <thread>

#include "steiner/rng.hpp"
#include "steiner/serialize.hpp"

namespace steiner {

using nlohmann::json;

namespace {

struct ConfigOutcome {
    bool ok = false;
    bool infeasible = false;
    CensusRecord record;
    std::string failure;
    json reproducer;
};

PointConfig sample_configuration(const Field& f, int k, uint32_t r, SeededRng& rng,
                                 int retry_cap, int& rejections) {
    std::vector<ProjPoint> plane = enumerate_plane_points(f);
    for (int attempt = 0; attempt <= retry_cap; ++attempt) {
        auto idx = rng.sample_distinct(plane.size(), static_cast<size_t>(k));
        std::vector<ProjPoint> pts;
        pts.reserve(k);
        for (uint64_t i : idx)
            pts.push_back(plane[i]);
        PointConfig z(2, std::move(pts));
        if (is_general_position(z, r).ok)
            return z;
        ++rejections;
    }
    throw PreconditionError("sampling did not reach general position within the retry cap");
}

ConfigOutcome run_one(const CensusConfig& cfg, int id) {
    ConfigOutcome out;
    auto t0 = std::chrono::steady_clock::now();
    Field f = Field::prime(cfg.p);
    SeededRng rng(SeededRng::derive(cfg.seed, static_cast<uint64_t>(id)));
    int k = cfg.k_min == cfg.k_max
                ? cfg.k_min
                : cfg.k_min + static_cast<int>(rng.below(cfg.k_max - cfg.k_min + 1));
    PointConfig z = [&]() {
        int rejections = 0;
        return sample_configuration(f, k, cfg.r, rng, cfg.retry_cap, rejections);
    }();

    auto reproducer = [&](const std::string& extra) {
        json rep;
        rep["field"] = f.str();
        rep["r"] = cfg.r;
        rep["seed"] = cfg.seed;
        rep["configuration_id"] = id;
        rep["points"] = point_config_to_json(z)["points"];
        if (!extra.empty())
            rep["failing_input"] = extra;
        return rep;
    };

    SteinerPresentation pres = build_logarithmic(z, cfg.r);
    WReport ideal = classify_W_ideal(z, cfg.r);
    ScanResult scan = scan_W_bundle(pres, ScanDomain::Exhaustive());

    // Oracle agreement over every dual point of the plane.
    for (const ProjPoint& x : enumerate_plane_points(f)) {
        bool bundle_side = std::binary_search(scan.found.begin(), scan.found.end(), x);
        bool ideal_side = unstable_test_ideal(z, cfg.r, x, false);
        if (bundle_side != ideal_side) {
            out.failure = "oracle disagreement at " + x.str() + ": bundle=" +
                          (bundle_side ? "unstable" : "stable") + ", ideal=" +
                          (ideal_side ? "unstable" : "stable");
            out.reproducer = reproducer(x.str());
            return out;
        }
    }

    // Classification coherence between the two routes.
    bool coherent = scan.report.kind == ideal.kind;
    if (coherent && ideal.kind == WKind::Finite) {
        std::vector<ProjPoint> zs = z.points();
        std::sort(zs.begin(), zs.end());
        coherent = zs == scan.found;
    }
    if (coherent && ideal.kind == WKind::Curve)
        coherent = scan.report.curve && ideal.curve &&
                   scan.report.curve->proportional_to(*ideal.curve);
    if (!coherent) {
        out.failure = "classification mismatch: ideal-side " + w_kind_name(ideal.kind) +
                      " vs bundle-side " + w_kind_name(scan.report.kind);
        out.reproducer = reproducer("");
        return out;
    }

    // Third route when the dual-side presentation is square: the pencil
    // determinant must cut out the same curve.
    if (scan.report.kind == WKind::Curve && pres.total() == 2 * pres.m() &&
        scan.report.curve) {
        HomForm det = w_determinant_curve(pres);
        if (!det.proportional_to(*scan.report.curve)) {
            out.failure = "determinant route disagrees with the scanned curve";
            out.reproducer = reproducer(format_hom_form(det));
            return out;
        }
    }

    std::vector<SecantViolation> violations =
        secant_pencil_check(pres, scan.found, cfg.r);

    auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                  std::chrono::steady_clock::now() - t0)
                  .count();
    out.ok = true;
    out.record = {id,
                  k,
                  cfg.r,
                  h0_ideal(z, cfg.r + 2),
                  scan.report.kind,
                  true,
                  violations.empty(),
                  static_cast<long>(ms)};
    if (!violations.empty()) {
        out.ok = false;
        out.failure = "secant lemma violation on the pencil dual to " +
                      violations[0].pencil_dual.str() + " at " +
                      violations[0].stable_point.str();
        out.reproducer = reproducer(violations[0].pencil_dual.str());
    }
    return out;
}

} // namespace

std::string CensusResult::csv() const {
    std::ostringstream os;
    os << "id,k,r,t,w_kind,agreement,secant_ok,ms\n";
    size_t agree = 0, secant = 0;
    std::map<std::string, int> kinds;
    long total_ms = 0;
    for (const auto& rec : records) {
        os << rec.id << ',' << rec.k << ',' << rec.r << ',' << rec.t << ','
           << w_kind_name(rec.w_kind) << ',' << (rec.agreement ? 1 : 0) << ','
           << (rec.secant_ok ? 1 : 0) << ',' << rec.ms << '\n';
        agree += rec.agreement;
        secant += rec.secant_ok;
        ++kinds[w_kind_name(rec.w_kind)];
        total_ms += rec.ms;
    }
    os << "# summary configs=" << records.size() << " agreement=" << agree << "/"
       << records.size() << " secant_ok=" << secant << "/" << records.size();
    for (const auto& [kind, count] : kinds)
        os << " " << kind << "=" << count;
    os << " total_ms=" << total_ms << "\n";
    return os.str();
}

CensusResult run_census(const CensusConfig& cfg) {
    CensusResult result;
    if (cfg.count < 1)
        throw PreconditionError("census needs count >= 1");
    if (cfg.k_min < 1 || cfg.k_max < cfg.k_min)
        throw PreconditionError("census needs a sane size range");
    Field::prime(cfg.p); // validates the modulus

    std::vector<ConfigOutcome> outcomes(cfg.count);
    std::atomic<int> next{0};
    std::atomic<bool> stop{false};
    std::mutex err_mutex;
    std::string first_error;

    auto worker = [&]() {
        for (;;) {
            int id = next.fetch_add(1);
            if (id >= cfg.count || stop.load())
                return;
            try {
                outcomes[id] = run_one(cfg, id);
                if (!outcomes[id].ok && outcomes[id].failure.empty())
                    outcomes[id].failure = "unknown failure";
            } catch (const PreconditionError& e) {
                outcomes[id].infeasible = true;
                outcomes[id].failure = e.what();
            } catch (const std::exception& e) {
                outcomes[id].failure = e.what();
            }
            if (!outcomes[id].ok) {
                std::lock_guard<std::mutex> lock(err_mutex);
                stop.store(true);
            }
        }
    };

    int workers = std::max(1, cfg.workers);
    if (workers == 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        for (int w = 0; w < workers; ++w)
            pool.emplace_back(worker);
        for (auto& th : pool)
            th.join();
    }

    for (int id = 0; id < cfg.count; ++id) {
        const ConfigOutcome& oc = outcomes[id];
        if (oc.ok) {
            result.records.push_back(oc.record);
            continue;
        }
        if (oc.failure.empty())
            continue; // skipped after stop
        result.ok = false;
        result.failure = "configuration " + std::to_string(id) + ": " + oc.failure;
        result.reproducer = oc.reproducer;
        result.exit_code = oc.infeasible ? 1 : 2;
        return result;
    }
    result.ok = true;
    result.exit_code = 0;
    return result;
}

} // namespace steiner
