#include "steiner/serialize.hpp"

namespace steiner {

using nlohmann::json;

std::string dump_json(const json& j) {
    return j.dump(2) + "\n";
}

json parse_json(const std::string& text) {
    try {
        return json::parse(text);
    } catch (const json::parse_error& e) {
        throw FormatError(std::string("bad JSON: ") + e.what());
    }
}

namespace {

std::string get_string(const json& j, const char* key) {
    if (!j.contains(key) || !j[key].is_string())
        throw FormatError(std::string("missing or non-string field \"") + key + "\"");
    return j[key].get<std::string>();
}

uint64_t get_uint(const json& j, const char* key) {
    if (!j.contains(key) || !j[key].is_number_unsigned())
        throw FormatError(std::string("missing or non-integer field \"") + key + "\"");
    return j[key].get<uint64_t>();
}

} // namespace

json point_config_to_json(const PointConfig& z) {
    json j;
    j["field"] = z.field().str();
    j["n"] = z.n();
    json pts = json::array();
    for (const auto& p : z.points()) {
        json coords = json::array();
        for (const auto& c : p.coords())
            coords.push_back(c.str());
        pts.push_back(coords);
    }
    j["points"] = pts;
    return j;
}

PointConfig point_config_from_json(const json& j) {
    Field f = Field::parse(get_string(j, "field"));
    uint32_t n = static_cast<uint32_t>(get_uint(j, "n"));
    if (!j.contains("points") || !j["points"].is_array() || j["points"].empty())
        throw FormatError("point configuration needs a nonempty \"points\" array");
    std::vector<ProjPoint> pts;
    for (const auto& coords : j["points"]) {
        if (!coords.is_array() || coords.size() != n + 1)
            throw FormatError("each point needs n+1 coordinate strings");
        std::vector<FieldElem> c;
        for (const auto& s : coords) {
            if (!s.is_string())
                throw FormatError("coordinates are exact-scalar strings");
            c.push_back(FieldElem::parse(f, s.get<std::string>()));
        }
        pts.push_back(ProjPoint(f, std::move(c)));
    }
    return PointConfig(n, std::move(pts));
}

json mat_to_json(const Mat& m) {
    json rows = json::array();
    for (size_t i = 0; i < m.rows(); ++i) {
        json row = json::array();
        for (size_t j = 0; j < m.cols(); ++j)
            row.push_back(m.at(i, j).str());
        rows.push_back(row);
    }
    return rows;
}

Mat mat_from_json(const Field& f, const json& j) {
    if (!j.is_array())
        throw FormatError("matrix must be an array of rows");
    size_t rows = j.size();
    size_t cols = rows ? j[0].size() : 0;
    Mat m(f, rows, cols);
    for (size_t i = 0; i < rows; ++i) {
        if (!j[i].is_array() || j[i].size() != cols)
            throw FormatError("ragged matrix rows");
        for (size_t c = 0; c < cols; ++c) {
            if (!j[i][c].is_string())
                throw FormatError("matrix entries are exact-scalar strings");
            m.set(i, c, FieldElem::parse(f, j[i][c].get<std::string>()));
        }
    }
    return m;
}

json presentation_to_json(const SteinerPresentation& p) {
    json j;
    j["field"] = p.field().str();
    j["nvars"] = p.nvars();
    j["m"] = p.m();
    j["total"] = p.total();
    json mats = json::array();
    for (const Mat& m : p.matrices())
        mats.push_back(mat_to_json(m));
    j["matrices"] = mats;
    json prov;
    prov["tag"] = provenance_tag(p.provenance());
    if (!p.provenance_detail().empty()) {
        try {
            prov["detail"] = json::parse(p.provenance_detail());
        } catch (const json::parse_error&) {
            prov["detail"] = p.provenance_detail();
        }
    }
    j["provenance"] = prov;
    j["monomial_order"] = monomial_order_tag(p.nvars());
    return j;
}

SteinerPresentation presentation_from_json(const json& j) {
    Field f = Field::parse(get_string(j, "field"));
    uint32_t nvars = static_cast<uint32_t>(get_uint(j, "nvars"));
    size_t m = get_uint(j, "m");
    size_t total = get_uint(j, "total");
    if (j.contains("monomial_order") &&
        j["monomial_order"].get<std::string>() != monomial_order_tag(nvars))
        throw FormatError("unsupported monomial order: " +
                          j["monomial_order"].get<std::string>());
    if (!j.contains("matrices") || !j["matrices"].is_array() || j["matrices"].size() != nvars)
        throw FormatError("presentation needs one matrix per variable");
    std::vector<Mat> mats;
    for (const auto& mj : j["matrices"]) {
        Mat mat = mat_from_json(f, mj);
        if (mat.rows() != total || mat.cols() != m)
            throw FormatError("pencil matrix shape does not match (total, m)");
        mats.push_back(std::move(mat));
    }
    Provenance prov = Provenance::Manual;
    std::string detail;
    if (j.contains("provenance") && j["provenance"].is_object()) {
        prov = parse_provenance_tag(get_string(j["provenance"], "tag"));
        if (j["provenance"].contains("detail"))
            detail = j["provenance"]["detail"].dump();
    }
    return SteinerPresentation(nvars, std::move(mats), prov, detail);
}

json hom_form_to_json(const HomForm& h) {
    json j;
    j["field"] = h.field().str();
    j["nvars"] = h.nvars();
    j["degree"] = h.degree();
    json coeffs = json::array();
    for (const auto& c : h.coeffs())
        coeffs.push_back(c.str());
    j["coefficients"] = coeffs;
    j["monomial_order"] = monomial_order_tag(h.nvars());
    j["text"] = format_hom_form(h);
    return j;
}

HomForm hom_form_from_json(const json& j) {
    Field f = Field::parse(get_string(j, "field"));
    uint32_t nvars = static_cast<uint32_t>(get_uint(j, "nvars"));
    uint32_t degree = static_cast<uint32_t>(get_uint(j, "degree"));
    if (!j.contains("coefficients") || !j["coefficients"].is_array())
        throw FormatError("form needs a coefficient array");
    std::vector<FieldElem> coeffs;
    for (const auto& s : j["coefficients"])
        coeffs.push_back(FieldElem::parse(f, s.get<std::string>()));
    return HomForm::from_coeffs(f, nvars, degree, std::move(coeffs));
}

json proj_point_to_json(const ProjPoint& p) {
    json coords = json::array();
    for (const auto& c : p.coords())
        coords.push_back(c.str());
    return coords;
}

ProjPoint proj_point_from_json(const Field& f, const json& j) {
    if (!j.is_array() || j.empty())
        throw FormatError("point must be a coordinate array");
    std::vector<FieldElem> c;
    for (const auto& s : j) {
        if (!s.is_string())
            throw FormatError("coordinates are exact-scalar strings");
        c.push_back(FieldElem::parse(f, s.get<std::string>()));
    }
    return ProjPoint(f, std::move(c));
}

json w_report_to_json(const WReport& rep) {
    json j;
    j["kind"] = w_kind_name(rep.kind);
    json pts = json::array();
    for (const auto& p : rep.points)
        pts.push_back(proj_point_to_json(p));
    j["points"] = pts;
    if (rep.curve) {
        json c;
        c["degree"] = rep.curve_degree;
        json coeffs = json::array();
        for (const auto& x : rep.curve->coeffs())
            coeffs.push_back(x.str());
        c["coefficients"] = coeffs;
        c["text"] = format_hom_form(*rep.curve);
        j["curve"] = c;
    } else {
        j["curve"] = nullptr;
    }
    j["method"] = rep.method;
    j["expected_codimension"] = rep.expected_codim;
    json checks = json::array();
    for (const auto& s : rep.cross_checks)
        checks.push_back(s);
    j["cross_checks"] = checks;
    return j;
}

json validity_to_json(const ValidityReport& rep) {
    json j;
    j["valid"] = rep.valid;
    j["conclusive"] = rep.conclusive;
    j["strategy"] = rep.strategy;
    j["detail"] = rep.detail;
    j["witness"] = rep.witness ? proj_point_to_json(*rep.witness) : json(nullptr);
    j["cost_warning"] = rep.cost_warning;
    return j;
}

json iso_to_json(const IsoResult& res) {
    json j;
    j["isomorphic"] = res.isomorphic;
    j["probabilistic"] = res.probabilistic;
    j["reason"] = res.reason;
    j["hom_dimension"] = res.hom_dim;
    if (res.witness) {
        json w;
        w["A"] = mat_to_json(res.witness->a);
        w["B"] = mat_to_json(res.witness->b);
        j["witness"] = w;
    } else {
        j["witness"] = nullptr;
    }
    return j;
}

json splitting_to_json(const SplittingType& st) {
    json j;
    j["degrees"] = st.degrees;
    return j;
}

json torelli_to_json(const TorelliReport& rep) {
    json j;
    j["isomorphic"] = rep.isomorphic;
    j["case"] = rep.dichotomy_case == 0 ? json(nullptr) : json(rep.dichotomy_case);
    j["violation"] = rep.violation;
    if (rep.common_curve) {
        json c;
        c["coefficients"] = json::array();
        for (const auto& x : rep.common_curve->coeffs())
            c["coefficients"].push_back(x.str());
        c["degree"] = rep.common_curve->degree();
        c["text"] = format_hom_form(*rep.common_curve);
        j["common_curve"] = c;
    } else {
        j["common_curve"] = nullptr;
    }
    j["hom_dimension"] = rep.hom_dim;
    j["note"] = rep.note;
    if (rep.witness) {
        json w;
        w["A"] = mat_to_json(rep.witness->a);
        w["B"] = mat_to_json(rep.witness->b);
        j["witness"] = w;
    } else {
        j["witness"] = nullptr;
    }
    return j;
}

json unstable_to_json(const UnstableResult& res) {
    json j;
    j["unstable"] = res.unstable;
    j["kernel_dimension"] = res.kernel_dim;
    return j;
}

} // namespace steiner
