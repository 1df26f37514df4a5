#pragma once

// Reference records: KIND m Re(z) Im(z) Re(value) Im(value), one per line.

#include <cmath>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "openres/specfun.hpp"

namespace openres::oracle {

struct OracleRecord {
    std::string kind;
    int m;
    cplx z;
    cplx value;
};

inline std::vector<OracleRecord> load_cylinder_oracle(const std::string& path) {
    std::ifstream in(path);
    std::vector<OracleRecord> out;
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty() || line[0] == '#') continue;
        std::istringstream ss(line);
        OracleRecord r;
        double zr, zi, vr, vi;
        ss >> r.kind >> r.m >> zr >> zi >> vr >> vi;
        r.z = {zr, zi};
        r.value = {vr, vi};
        out.push_back(r);
    }
    return out;
}

inline cplx evaluate_record(const OracleRecord& r) {
    using namespace openres::specfun;
    if (r.kind == "JZERO") return bessel_j_zero(r.m, static_cast<int>(r.z.real())).x;
    bool d = r.kind[0] == 'd';
    std::string k = d ? r.kind.substr(1) : r.kind;
    Cyl f = k == "J" ? Cyl::J : k == "Y" ? Cyl::Y : k == "H1" ? Cyl::H1 : Cyl::H2;
    if (!d && k == "Y") return bessel_y(r.m, r.z.real());
    if (!d && k == "J" && r.z.imag() == 0.0) return bessel_j(r.m, r.z.real());
    return d ? cyl_deriv(f, r.m, r.z) : cyl(f, r.m, r.z);
}

struct OracleSummary {
    std::size_t count = 0;
    double worst = 0.0;
    OracleRecord worst_record{};
};

inline OracleSummary compare_oracle(const std::vector<OracleRecord>& recs) {
    OracleSummary s;
    for (const auto& r : recs) {
        cplx v = evaluate_record(r);
        double err = std::abs(v - r.value) / std::abs(r.value);
        if (!(err <= s.worst)) {
            s.worst = err;
            s.worst_record = r;
        }
        ++s.count;
    }
    return s;
}

}  // namespace openres::oracle
