#include "robin/report.hpp"

#include <cstdint>
#include <cstdio>
#include <cstring>

#include "json.hpp"

namespace robin::report {

namespace {

std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.12g", v);
    return buf;
}

// Labels may carry commas (e.g. rectangle:4,0.25); quote them per RFC 4180.
std::string csv_field(const std::string& s) {
    if (s.find_first_of(",\"") == std::string::npos) {
        return s;
    }
    std::string quoted = "\"";
    for (char c : s) {
        if (c == '"') quoted += '"';
        quoted += c;
    }
    quoted += '"';
    return quoted;
}

}  // namespace

std::string csv_header() {
    return "shape_id,m_or_file,alpha,perimeter,area,inradius,R_star,"
           "lambda_star,rayleigh_w,lambda_fem,fem_error,margin_star,"
           "margin_fw,perimetri_ok,energie_ok,normeL2_ok,boundary_ok,"
           "chain_ok";
}

std::string to_csv_row(const TheoremReport& r) {
    std::string row;
    row += r.shape_id;
    row += ',' + csv_field(r.shape_label);
    row += ',' + format_double(r.alpha);
    row += ',' + format_double(r.perimeter);
    row += ',' + format_double(r.area);
    row += ',' + format_double(r.inradius);
    row += ',' + format_double(r.r_star);
    row += ',' + format_double(r.lambda_star);
    row += ',' + format_double(r.rayleigh_w);
    row += ',' + format_double(r.lambda_fem);
    row += ',' + format_double(r.fem_error);
    row += ',' + format_double(r.margin_star);
    row += ',' + format_double(r.margin_fw);
    row += r.perimetri_ok ? ",1" : ",0";
    row += r.energie_ok ? ",1" : ",0";
    row += r.normel2_ok ? ",1" : ",0";
    row += r.boundary_ok ? ",1" : ",0";
    row += r.chain_ok ? ",1" : ",0";
    return row;
}

std::string to_json(const TheoremReport& r) {
    nlohmann::json j;
    j["shape_id"] = r.shape_id;
    j["m_or_file"] = r.shape_label;
    j["alpha"] = r.alpha;
    j["perimeter"] = r.perimeter;
    j["area"] = r.area;
    j["inradius"] = r.inradius;
    j["R_star"] = r.r_star;
    j["lambda_star"] = r.lambda_star;
    j["rayleigh_w"] = r.rayleigh_w;
    j["lambda_fem"] = r.lambda_fem;
    j["fem_error"] = r.fem_error;
    j["margin_star"] = r.margin_star;
    j["margin_fw"] = r.margin_fw;
    j["perimetri_ok"] = r.perimetri_ok;
    j["energie_ok"] = r.energie_ok;
    j["normeL2_ok"] = r.normel2_ok;
    j["boundary_ok"] = r.boundary_ok;
    j["chain_ok"] = r.chain_ok;
    j["tol_chain"] = r.tol_chain;
    j["quad_tol"] = r.quad_tol;
    return j.dump(2);
}

std::string fingerprint(const std::vector<double>& coords) {
    std::uint64_t hash = 1469598103934665603ULL;
    for (double v : coords) {
        std::uint64_t bits;
        std::memcpy(&bits, &v, sizeof(bits));
        for (int b = 0; b < 8; ++b) {
            hash ^= (bits >> (8 * b)) & 0xffULL;
            hash *= 1099511628211ULL;
        }
    }
    char buf[20];
    std::snprintf(buf, sizeof(buf), "%016llx",
                  static_cast<unsigned long long>(hash));
    return buf;
}

}  // namespace robin::report
