#include "su11/io.hpp"

#include <cstdio>

namespace su11 {

std::string fmt17(double v)
{
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

Json to_json(const Mat& m)
{
    Json rows = Json::array();
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
        Json r = Json::array();
        for (Eigen::Index j = 0; j < m.cols(); ++j)
            r.push_back({m(i, j).real(), m(i, j).imag()});
        rows.push_back(r);
    }
    return rows;
}

Json to_json(const Op& X)
{
    Json j;
    j["dim"] = X.dim();
    j["basis_tag"] = basis_name(X.basis());
    Json e = Json::array();
    for (int r = 0; r < X.dim(); ++r)
        for (int c = 0; c < X.dim(); ++c)
            e.push_back({X(r, c).real(), X(r, c).imag()});
    j["entries"] = e;
    return j;
}

Op op_from_json(const Json& j)
{
    const int D = j.at("dim").get<int>();
    const std::string tag = j.at("basis_tag").get<std::string>();
    Basis b;
    if (tag == "su11_number")
        b = Basis::su11_number;
    else if (tag == "boson_number")
        b = Basis::boson_number;
    else if (tag == "grid")
        b = Basis::grid;
    else
        throw DomainError("unknown basis tag " + tag);
    const auto& e = j.at("entries");
    if (static_cast<int>(e.size()) != D * D)
        throw DomainError("entry count does not match dim");
    Mat m(D, D);
    for (int k = 0; k < D * D; ++k)
        m(k / D, k % D) = cplx(e[k][0].get<double>(), e[k][1].get<double>());
    return {m, b};
}

Json to_json(const ExtensionReport& r)
{
    Json j;
    j["construction"] = r.construction;
    j["dims"] = r.dims;
    j["normality_residual"] = r.normality_residual;
    j["extension_residual"] = r.extension_residual;
    j["test_family"] = r.test_family;
    j["grid_spec"] = r.grid_spec;
    j["ancilla_spec"] = r.ancilla_spec;
    Json c = Json::object();
    for (const auto& [k, v] : r.checks)
        c[k] = v;
    j["checks"] = c;
    if (r.domain_violation) {
        j["domain_violation"] = {{"phi", r.domain_violation->phi},
                                 {"residual", r.domain_violation->residual}};
    }
    j["pass"] = r.pass;
    return j;
}

Json to_json(const RoiResult& r)
{
    Json rows = Json::array();
    for (Eigen::Index n = 0; n < r.diag_defect.size(); ++n)
        rows.push_back({{"n", n},
                        {"diagonal", r.M(static_cast<int>(n), static_cast<int>(n)).real()},
                        {"defect", r.diag_defect(n)},
                        {"cutoff_defect", r.cutoff_defect(n)},
                        {"corrected_defect", r.corrected(n)}});
    Json j;
    j["rows"] = rows;
    j["offdiag_max"] = r.offdiag_max;
    return j;
}

Json to_json(const Reduction& r)
{
    return {{"n", r.n}, {"k", r.k}, {"lambda", r.lambda}, {"subnormal", r.subnormal}};
}

Json to_json(const NaimarkDilation& d)
{
    Json j;
    j["isometry"] = to_json(d.V);
    Json e = Json::array();
    for (const auto& E : d.projective.effects)
        e.push_back(to_json(E));
    j["projective_effects"] = e;
    return j;
}

namespace {

void emit(std::string& out, const Json& j, int indent, int level)
{
    const std::string pad(static_cast<std::size_t>(indent * (level + 1)), ' ');
    const std::string close(static_cast<std::size_t>(indent * level), ' ');
    switch (j.type()) {
    case Json::value_t::object: {
        if (j.empty()) {
            out += "{}";
            return;
        }
        out += "{\n";
        bool first = true;
        for (auto it = j.begin(); it != j.end(); ++it) {
            if (!first)
                out += ",\n";
            first = false;
            out += pad + Json(it.key()).dump() + ": ";
            emit(out, it.value(), indent, level + 1);
        }
        out += "\n" + close + "}";
        return;
    }
    case Json::value_t::array: {
        bool scalar = true;
        for (const auto& v : j)
            scalar = scalar && !v.is_structured();
        out += "[";
        bool first = true;
        for (const auto& v : j) {
            if (!first)
                out += scalar ? ", " : ",\n";
            else if (!scalar)
                out += "\n";
            first = false;
            if (!scalar)
                out += pad;
            emit(out, v, indent, level + 1);
        }
        if (!scalar && !j.empty())
            out += "\n" + close;
        out += "]";
        return;
    }
    case Json::value_t::number_float: {
        const double v = j.get<double>();
        out += std::isfinite(v) ? fmt17(v) : "null";
        return;
    }
    default:
        out += j.dump();
    }
}

}  // namespace

std::string dump(const Json& j)
{
    std::string out;
    emit(out, j, 2, 0);
    out += "\n";
    return out;
}

void write_csv_header(std::ostream& os, const std::vector<std::string>& cols)
{
    for (std::size_t i = 0; i < cols.size(); ++i)
        os << (i ? "," : "") << cols[i];
    os << '\n';
}

void write_csv_row(std::ostream& os, const std::vector<double>& vals)
{
    for (std::size_t i = 0; i < vals.size(); ++i)
        os << (i ? "," : "") << fmt17(vals[i]);
    os << '\n';
}

void write_grid_function_csv(std::ostream& os, const GridFunction& f)
{
    write_csv_header(os, {"x", "re", "im"});
    for (int i = 0; i < f.grid->size(); ++i)
        write_csv_row(os, {f.grid->x(i), f.values(i).real(), f.values(i).imag()});
}

void write_state_csv(std::ostream& os, const State& s)
{
    write_csv_header(os, {"n", "re", "im"});
    for (int n = 0; n < s.dim(); ++n)
        write_csv_row(os, {static_cast<double>(n), s.coeffs()(n).real(), s.coeffs()(n).imag()});
}

}  // namespace su11
