#include "hcfix/io.hpp"

#include <cstdio>
#include <sstream>

namespace hcfix {

namespace {

std::string quote(const std::string& s) {
    std::string out = "\"";
    for (char c : s) {
        switch (c) {
            case '"': out += "\\\""; break;
            case '\\': out += "\\\\"; break;
            case '\n': out += "\\n"; break;
            default: out += c;
        }
    }
    out += '"';
    return out;
}

void append_string_array(std::ostringstream& os, const std::vector<std::string>& items) {
    os << '[';
    for (std::size_t i = 0; i < items.size(); ++i) {
        if (i) os << ',';
        os << quote(items[i]);
    }
    os << ']';
}

}  // namespace

std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::string csv_row(const std::vector<std::string>& fields) {
    std::string out;
    for (std::size_t i = 0; i < fields.size(); ++i) {
        if (i) out += ',';
        out += fields[i];
    }
    out += '\n';
    return out;
}

std::string to_json(const OutputRecord& rec) {
    std::ostringstream os;
    os << "{\n";
    os << "  \"schema_version\": \"1\",\n";
    os << "  \"command\": " << quote(rec.command) << ",\n";
    os << "  \"params\": {\"theta\": " << format_double(rec.theta)
       << ", \"ell1\": " << format_double(rec.ell1) << ", \"ell2\": " << format_double(rec.ell2)
       << "}";

    if (rec.region) {
        const RegionRecord& r = *rec.region;
        os << ",\n  \"region\": {";
        os << "\"formula\": " << quote(r.formula ? *r.formula : "unassigned");
        os << ", \"computed\": " << quote(r.computed);
        os << ", \"i\": " << r.diag_count << ", \"j\": " << r.offdiag_count;
        os << ", \"on_boundary\": ";
        append_string_array(os, r.on_boundary);
        os << ", \"agreement\": " << (r.agreement ? "true" : "false");
        os << "}";
    }

    os << ",\n  \"fixed_points\": [";
    for (std::size_t i = 0; i < rec.fixed_points.size(); ++i) {
        const auto& fp = rec.fixed_points[i];
        os << (i ? ",\n    " : "\n    ");
        os << "{\"kind\": " << quote(fp.kind) << ", \"x\": " << format_double(fp.x)
           << ", \"y\": " << format_double(fp.y)
           << ", \"residual\": " << format_double(fp.residual) << "}";
    }
    os << (rec.fixed_points.empty() ? "]" : "\n  ]");

    if (!rec.lifted.empty()) {
        os << ",\n  \"lifted\": [";
        for (std::size_t i = 0; i < rec.lifted.size(); ++i) {
            const auto& lv = rec.lifted[i];
            os << (i ? ",\n    " : "\n    ");
            os << "{\"source\": [" << format_double(lv.source_x) << ", "
               << format_double(lv.source_y) << "], \"entries\": [";
            for (std::size_t k = 0; k < lv.entries.size(); ++k) {
                if (k) os << ", ";
                os << format_double(lv.entries[k]);
            }
            os << "], \"residual\": " << format_double(lv.residual) << "}";
        }
        os << "\n  ]";
    }

    if (rec.oracle_check) {
        const auto& oc = *rec.oracle_check;
        os << ",\n  \"oracle_check\": {\"match\": " << (oc.match ? "true" : "false")
           << ", \"solver_points\": " << oc.solver_points
           << ", \"oracle_points\": " << oc.oracle_points
           << ", \"max_mismatch\": " << format_double(oc.max_mismatch) << "}";
    }

    os << "\n}\n";
    return os.str();
}

}  // namespace hcfix
