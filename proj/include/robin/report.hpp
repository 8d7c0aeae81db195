#pragma once

// Verification report for one shape: both eigenvalue routes, the test
// function's Rayleigh quotient, and the per-inequality outcomes.

#include <string>
#include <vector>

namespace robin::report {

struct TheoremReport {
    std::string shape_id;     // FNV-1a fingerprint of the vertex data
    std::string shape_label;  // generator spec or file name
    double alpha = 0.0;

    double perimeter = 0.0;
    double area = 0.0;
    double inradius = 0.0;
    double r_star = 0.0;  // radius of the equal-perimeter disc

    double lambda_star = 0.0;  // disc eigenvalue (radial solver)
    double rayleigh_w = 0.0;   // F(w, Omega) of the transplanted test function
    double lambda_fem = 0.0;   // extrapolated FEM eigenvalue on Omega
    double fem_error = 0.0;

    double margin_star = 0.0;  // lambda_star - rayleigh_w
    double margin_fw = 0.0;    // rayleigh_w - lambda_fem

    bool perimetri_ok = false;
    bool energie_ok = false;
    bool normel2_ok = false;
    bool boundary_ok = false;
    bool chain_ok = false;

    double tol_chain = 0.0;
    double quad_tol = 0.0;

    bool all_ok() const {
        return perimetri_ok && energie_ok && normel2_ok && boundary_ok &&
               chain_ok;
    }
};

/// Fixed CSV column set; sweep output and --format csv use exactly this.
std::string csv_header();
std::string to_csv_row(const TheoremReport& r);
std::string to_json(const TheoremReport& r);

/// FNV-1a fingerprint of a coordinate list, for shape identification.
std::string fingerprint(const std::vector<double>& coords);

}  // namespace robin::report
