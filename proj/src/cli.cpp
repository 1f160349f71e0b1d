#include "steiner/cli.hpp"

#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "steiner/census.hpp"
#include "steiner/serialize.hpp"

namespace steiner {

using nlohmann::json;

namespace {

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw FormatError("cannot read " + path);
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

/// Flag values may be @file references, bare paths of existing files, or
/// inline JSON.
json resolve_json_arg(const std::string& value) {
    if (!value.empty() && value[0] == '@')
        return parse_json(read_file(value.substr(1)));
    if (std::filesystem::exists(value))
        return parse_json(read_file(value));
    return parse_json(value);
}

void write_output(const std::string& text, const std::string& out_path, std::ostream& out) {
    if (out_path.empty()) {
        out << text;
        return;
    }
    std::ofstream f(out_path, std::ios::binary);
    if (!f)
        throw FormatError("cannot write " + out_path);
    f << text;
}

PointConfig load_points(const std::string& value, const std::string& field_flag) {
    json j = resolve_json_arg(value);
    if (j.is_object())
        return point_config_from_json(j);
    if (!j.is_array() || j.empty())
        throw FormatError("points must be a config object or an array of coordinate arrays");
    if (field_flag.empty())
        throw FormatError("bare point arrays need --field");
    Field f = Field::parse(field_flag);
    if (!j[0].is_array() || j[0].empty())
        throw FormatError("points must be coordinate arrays");
    uint32_t n = static_cast<uint32_t>(j[0].size()) - 1;
    json cfg;
    cfg["field"] = f.str();
    cfg["n"] = n;
    cfg["points"] = j;
    return point_config_from_json(cfg);
}

SteinerPresentation load_presentation(const std::string& value) {
    return presentation_from_json(resolve_json_arg(value));
}

ProjPoint load_point(const Field& f, const std::string& value) {
    return proj_point_from_json(f, resolve_json_arg(value));
}

HomForm load_form(const std::string& value, const std::string& field_flag) {
    // Either a serialized form object or the text syntax (needs --field).
    if (!value.empty() && (value[0] == '@' || value[0] == '{') )
        return hom_form_from_json(resolve_json_arg(value));
    if (std::filesystem::exists(value))
        return hom_form_from_json(parse_json(read_file(value)));
    if (field_flag.empty())
        throw FormatError("text-syntax curves need --field");
    return parse_hom_form(Field::parse(field_flag), 3, value);
}

struct Options {
    std::string field, points, points_b, presentation, presentation_b;
    std::string curve, hyperplane, line_dual, line, center, out, strategy = "exhaustive-fp";
    std::string k_range = "10";
    uint32_t r = 0, n = 2, m = 3, a = 3;
    uint32_t trials = 24;
    uint64_t seed = 42;
    int workers = 1, count = 10, samples = 200, retry_cap = 10000;
    bool exhaustive = false;
};

int dispatch(const std::string& cmd, const Options& opt, std::ostream& out) {
    if (cmd == "build-log") {
        PointConfig z = load_points(opt.points, opt.field);
        SteinerPresentation p = build_logarithmic(z, opt.r);
        write_output(dump_json(presentation_to_json(p)), opt.out, out);
        return 0;
    }
    if (cmd == "build-schw") {
        Field f = Field::parse(opt.field.empty() ? "rational" : opt.field);
        SteinerPresentation p = build_schwarzenberger(opt.n, opt.m, f);
        write_output(dump_json(presentation_to_json(p)), opt.out, out);
        return 0;
    }
    if (cmd == "build-curve") {
        HomForm f = load_form(opt.curve, opt.field);
        SteinerPresentation p = build_curve_twist(f, opt.a);
        write_output(dump_json(presentation_to_json(p)), opt.out, out);
        return 0;
    }
    if (cmd == "restrict") {
        SteinerPresentation p = load_presentation(opt.presentation);
        ProjPoint h = load_point(p.field(), opt.hyperplane);
        write_output(dump_json(presentation_to_json(restrict_to_hyperplane(p, h))), opt.out, out);
        return 0;
    }
    if (cmd == "validate") {
        SteinerPresentation p = load_presentation(opt.presentation);
        ValidityReport rep = validate_bundle(p, parse_strategy(opt.strategy), opt.seed,
                                             opt.samples);
        write_output(dump_json(validity_to_json(rep)), opt.out, out);
        return 0;
    }
    if (cmd == "unstable") {
        SteinerPresentation p = load_presentation(opt.presentation);
        std::string coords = opt.line_dual.empty() ? opt.hyperplane : opt.line_dual;
        if (coords.empty())
            throw FormatError("unstable needs --line-dual or --hyperplane");
        ProjPoint h = load_point(p.field(), coords);
        UnstableResult res = unstable_test_bundle(p, h);
        json j = unstable_to_json(res);
        ValidityReport validity = validate_bundle(
            p, p.field().is_prime() && p.nvars() == 3 ? ValidateStrategy::ExhaustiveFp
                                                      : ValidateStrategy::Sampled,
            opt.seed, opt.samples);
        j["sheaf_mode"] = !validity.valid;
        write_output(dump_json(j), opt.out, out);
        return 0;
    }
    if (cmd == "splitting") {
        SteinerPresentation p = load_presentation(opt.presentation);
        LineParam param = [&]() {
            if (!opt.line_dual.empty())
                return line_from_dual(load_point(p.field(), opt.line_dual));
            if (opt.line.empty())
                throw FormatError("splitting needs --line-dual or --line");
            json j = resolve_json_arg(opt.line);
            return LineParam{proj_point_from_json(p.field(), j.at("a")),
                             proj_point_from_json(p.field(), j.at("b"))};
        }();
        write_output(dump_json(splitting_to_json(splitting_type(p, param))), opt.out, out);
        return 0;
    }
    if (cmd == "w-classify") {
        PointConfig z = load_points(opt.points, opt.field);
        write_output(dump_json(w_report_to_json(classify_W_ideal(z, opt.r))), opt.out, out);
        return 0;
    }
    if (cmd == "w-scan") {
        SteinerPresentation p = load_presentation(opt.presentation);
        ScanDomain domain = ScanDomain::Exhaustive();
        if (!opt.exhaustive) {
            if (opt.points.empty())
                throw FormatError("w-scan needs --exhaustive or --samples");
            json j = resolve_json_arg(opt.points);
            std::vector<ProjPoint> pts;
            for (const auto& c : j)
                pts.push_back(proj_point_from_json(p.field(), c));
            domain = ScanDomain::Samples(std::move(pts));
        }
        ScanResult res = scan_W_bundle(p, domain);
        json j = w_report_to_json(res.report);
        json found = json::array();
        for (const auto& x : res.found)
            found.push_back(proj_point_to_json(x));
        j["found"] = found;
        write_output(dump_json(j), opt.out, out);
        return 0;
    }
    if (cmd == "iso") {
        SteinerPresentation p1 = load_presentation(opt.presentation);
        SteinerPresentation p2 = load_presentation(opt.presentation_b);
        IsoResult res = is_isomorphic(p1, p2, opt.trials, opt.seed);
        write_output(dump_json(iso_to_json(res)), opt.out, out);
        return 0;
    }
    if (cmd == "torelli") {
        PointConfig z1 = load_points(opt.points, opt.field);
        PointConfig z2 = load_points(opt.points_b, opt.field);
        TorelliReport rep = torelli_compare(z1, z2, opt.r, opt.trials, opt.seed);
        write_output(dump_json(torelli_to_json(rep)), opt.out, out);
        return rep.violation ? 2 : 0;
    }
    if (cmd == "projected-cubic") {
        Field f = Field::parse(opt.field.empty() ? "rational" : opt.field);
        ProjPoint h = load_point(f, opt.center);
        write_output(dump_json(hom_form_to_json(projected_cubic(h))), opt.out, out);
        return 0;
    }
    if (cmd == "census") {
        CensusConfig cfg;
        Field f = Field::parse(opt.field.empty() ? "p=31" : opt.field);
        if (!f.is_prime())
            throw PreconditionError("census runs over a prime field");
        cfg.p = f.p();
        cfg.count = opt.count;
        cfg.r = opt.r;
        cfg.seed = opt.seed;
        cfg.workers = opt.workers;
        cfg.retry_cap = opt.retry_cap;
        size_t dots = opt.k_range.find("..");
        if (dots == std::string::npos) {
            cfg.k_min = cfg.k_max = std::stoi(opt.k_range);
        } else {
            cfg.k_min = std::stoi(opt.k_range.substr(0, dots));
            cfg.k_max = std::stoi(opt.k_range.substr(dots + 2));
        }
        CensusResult res = run_census(cfg);
        if (!res.ok) {
            json fail;
            fail["failure"] = res.failure;
            fail["reproducer"] = res.reproducer;
            write_output(dump_json(fail), opt.out, out);
            return res.exit_code;
        }
        write_output(res.csv(), opt.out, out);
        return 0;
    }
    throw FormatError("unknown subcommand: " + cmd);
}

} // namespace

int run_command(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Exact Steiner-bundle toolkit: presentations, unstable loci, census"};
    app.require_subcommand(1);
    Options opt;

    auto add_common = [&](CLI::App* sub) {
        sub->add_option("--field", opt.field, "field descriptor: rational or p=<prime>");
        sub->add_option("--seed", opt.seed, "seed for randomized searches");
        sub->add_option("--out", opt.out, "output path (stdout when omitted)");
    };

    CLI::App* c;
    c = app.add_subcommand("build-log", "logarithmic presentation from a point set");
    add_common(c);
    c->add_option("--r", opt.r, "twist: uses J_Z(r+1)");
    c->add_option("--points", opt.points, "point config (JSON, @file or path)")->required();

    c = app.add_subcommand("build-schw", "rational-normal-curve pencil");
    add_common(c);
    c->add_option("--n", opt.n, "ambient dimension");
    c->add_option("--m", opt.m, "divisor degree on the curve (m >= n)");

    c = app.add_subcommand("build-curve", "pushforward twist of a plane curve");
    add_common(c);
    c->add_option("--curve", opt.curve, "curve: text syntax or serialized form")->required();
    c->add_option("--a", opt.a, "twist degree (a >= deg - 1)");

    c = app.add_subcommand("restrict", "restrict a pencil to a hyperplane");
    add_common(c);
    c->add_option("--presentation", opt.presentation, "presentation JSON")->required();
    c->add_option("--hyperplane", opt.hyperplane, "hyperplane dual coordinates")->required();

    c = app.add_subcommand("validate", "bundle validity of a pencil");
    add_common(c);
    c->add_option("--presentation", opt.presentation)->required();
    c->add_option("--strategy", opt.strategy, "exhaustive-fp | sampled | minors");
    c->add_option("--samples", opt.samples, "sample count for the sampled strategy");

    c = app.add_subcommand("unstable", "hyperplane instability test (bundle side)");
    add_common(c);
    c->add_option("--presentation", opt.presentation)->required();
    c->add_option("--line-dual", opt.line_dual, "dual coordinates of the line (n = 2)");
    c->add_option("--hyperplane", opt.hyperplane, "hyperplane dual coordinates");
    c->add_option("--samples", opt.samples);

    c = app.add_subcommand("splitting", "splitting type on a line");
    add_common(c);
    c->add_option("--presentation", opt.presentation)->required();
    c->add_option("--line-dual", opt.line_dual, "dual coordinates of the line (n = 2)");
    c->add_option("--line", opt.line, "parametrized line {\"a\": [...], \"b\": [...]}");

    c = app.add_subcommand("w-classify", "unstable-locus classification (ideal side)");
    add_common(c);
    c->add_option("--r", opt.r);
    c->add_option("--points", opt.points)->required();

    c = app.add_subcommand("w-scan", "unstable-locus scan (bundle side)");
    add_common(c);
    c->add_option("--presentation", opt.presentation)->required();
    c->add_flag("--exhaustive", opt.exhaustive, "scan all of P^2(F_p)");
    c->add_option("--samples", opt.points, "sample points (JSON array or @file)");

    c = app.add_subcommand("iso", "isomorphism test between two presentations");
    add_common(c);
    c->add_option("--pa", opt.presentation, "first presentation")->required();
    c->add_option("--pb", opt.presentation_b, "second presentation")->required();
    c->add_option("--trials", opt.trials, "random combination attempts");

    c = app.add_subcommand("torelli", "dichotomy comparison of two point sets");
    add_common(c);
    c->add_option("--za", opt.points, "first point config")->required();
    c->add_option("--zb", opt.points_b, "second point config")->required();
    c->add_option("--r", opt.r);
    c->add_option("--trials", opt.trials);

    c = app.add_subcommand("projected-cubic", "cubic image of the twisted cubic");
    add_common(c);
    c->add_option("--hyperplane", opt.center, "plane dual coordinates in P^3")->required();

    c = app.add_subcommand("census", "seeded oracle-agreement census over F_p");
    add_common(c);
    c->add_option("--count", opt.count, "number of configurations");
    c->add_option("--k", opt.k_range, "configuration size: k or kmin..kmax");
    c->add_option("--r", opt.r);
    c->add_option("--workers", opt.workers, "worker thread count");
    c->add_option("--retry-cap", opt.retry_cap, "general-position rejection cap");

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return 0;
    } catch (const CLI::ParseError& e) {
        err << e.what() << "\n" << app.help();
        return 3;
    }

    try {
        return dispatch(app.get_subcommands().front()->get_name(), opt, out);
    } catch (const FormatError& e) {
        err << "format error: " << e.what() << "\n";
        return 3;
    } catch (const VerificationError& e) {
        err << "verification failure: " << e.what() << "\n";
        return 2;
    } catch (const PreconditionError& e) {
        err << "precondition violation: " << e.what() << "\n";
        return 1;
    } catch (const DegenerateInputError& e) {
        err << "degenerate input: " << e.what() << "\n";
        return 1;
    } catch (const UndefinedInputError& e) {
        err << "undefined input: " << e.what() << "\n";
        return 1;
    } catch (const StrategyError& e) {
        err << "strategy error: " << e.what() << "\n";
        return 1;
    } catch (const FieldMismatchError& e) {
        err << "field mismatch: " << e.what() << "\n";
        return 1;
    } catch (const std::invalid_argument& e) {
        err << "format error: " << e.what() << "\n";
        return 3;
    } catch (const Error& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return 3;
    }
}

} // namespace steiner
