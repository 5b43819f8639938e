#include "ribbonlim/io.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <sstream>
#include <system_error>

#include "ribbonlim/errors.hpp"

namespace ribbonlim {

std::string format_double(double v) {
    char buf[64];
    auto res = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, res.ptr);
}

std::string render_table(const Table& table) {
    auto config = table.config;
    std::sort(config.begin(), config.end());

    std::string out;
    for (const auto& [key, value] : config) {
        out += "# ";
        out += key;
        out += '=';
        out += value;
        out += '\n';
    }
    for (std::size_t c = 0; c < table.columns.size(); ++c) {
        if (c > 0) out += ',';
        out += table.columns[c];
    }
    out += '\n';
    for (const auto& row : table.rows) {
        if (row.size() != table.columns.size())
            throw InputError("table row width does not match its column names");
        for (std::size_t c = 0; c < row.size(); ++c) {
            if (c > 0) out += ',';
            out += format_double(row[c]);
        }
        out += '\n';
    }
    return out;
}

void write_table(const std::filesystem::path& path, const Table& table) {
    std::ofstream file(path, std::ios::binary);
    if (!file) throw InputError("cannot open " + path.string() + " for writing");
    file << render_table(table);
    if (!file) throw InputError("failed while writing " + path.string());
}

namespace {

std::vector<std::string> split_fields(const std::string& line) {
    std::vector<std::string> fields;
    std::string current;
    for (char ch : line) {
        if (ch == ',') {
            fields.push_back(current);
            current.clear();
        } else {
            current += ch;
        }
    }
    fields.push_back(current);
    for (auto& f : fields) {
        auto begin = f.find_first_not_of(" \t");
        auto end = f.find_last_not_of(" \t");
        f = (begin == std::string::npos) ? std::string() : f.substr(begin, end - begin + 1);
    }
    return fields;
}

double parse_field(const std::string& field, const std::filesystem::path& path, int lineno) {
    double value = 0.0;
    auto res = std::from_chars(field.data(), field.data() + field.size(), value);
    if (res.ec != std::errc() || res.ptr != field.data() + field.size()) {
        std::ostringstream msg;
        msg << path.string() << ":" << lineno << ": cannot parse '" << field << "' as a number";
        throw InputError(msg.str());
    }
    return value;
}

// Reads a CSV with the exact column names given, returning one vector of
// rows. Blank lines and '#' comments are skipped anywhere in the file.
std::vector<std::vector<double>> read_csv(const std::filesystem::path& path,
                                          const std::vector<std::string>& columns) {
    std::ifstream file(path);
    if (!file) throw InputError("cannot open " + path.string());

    std::vector<std::vector<double>> rows;
    std::string line;
    int lineno = 0;
    bool header_seen = false;
    while (std::getline(file, line)) {
        ++lineno;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        auto first = line.find_first_not_of(" \t");
        if (first == std::string::npos || line[first] == '#') continue;

        auto fields = split_fields(line);
        if (!header_seen) {
            if (fields != columns) {
                std::ostringstream msg;
                msg << path.string() << ":" << lineno << ": expected header ";
                for (std::size_t c = 0; c < columns.size(); ++c)
                    msg << (c ? "," : "") << columns[c];
                throw InputError(msg.str());
            }
            header_seen = true;
            continue;
        }
        if (fields.size() != columns.size()) {
            std::ostringstream msg;
            msg << path.string() << ":" << lineno << ": expected " << columns.size()
                << " fields, got " << fields.size();
            throw InputError(msg.str());
        }
        std::vector<double> row(fields.size());
        for (std::size_t c = 0; c < fields.size(); ++c)
            row[c] = parse_field(fields[c], path, lineno);
        rows.push_back(std::move(row));
    }
    if (!header_seen) throw InputError(path.string() + ": no header line found");
    if (rows.empty()) throw InputError(path.string() + ": no data rows");
    return rows;
}

}  // namespace

ReferenceChart read_chart_csv(const std::filesystem::path& path) {
    auto rows = read_csv(path, {"t", "D11", "D21", "D12", "D22", "kappa", "Ao11", "Ao12", "Ao22"});
    std::vector<double> t, kappa;
    std::vector<Mat2> frames;
    std::vector<SymMat2> natural;
    for (const auto& row : rows) {
        t.push_back(row[0]);
        Mat2 D;
        D << row[1], row[3], row[2], row[4];
        frames.push_back(D);
        kappa.push_back(row[5]);
        natural.push_back(SymMat2{row[6], row[7], row[8]});
    }
    return ReferenceChart::sampled(t, frames, natural, kappa);
}

NaturalCurvature read_natural_csv(const std::filesystem::path& path) {
    auto rows = read_csv(path, {"t", "Ao11", "Ao12", "Ao22"});
    std::vector<double> t;
    std::vector<SymMat2> values;
    for (const auto& row : rows) {
        t.push_back(row[0]);
        values.push_back(SymMat2{row[1], row[2], row[3]});
    }
    return NaturalCurvature::table(t, values);
}

ProfileSamples read_profile_csv(const std::filesystem::path& path) {
    auto rows = read_csv(path, {"t", "mu", "tau"});
    ProfileSamples samples;
    for (const auto& row : rows) {
        samples.t.push_back(row[0]);
        samples.mu.push_back(row[1]);
        samples.tau.push_back(row[2]);
    }
    return samples;
}

void write_obj(const std::filesystem::path& path, const RibbonMesh& mesh,
               const std::vector<std::pair<std::string, std::string>>& config) {
    std::ofstream file(path, std::ios::binary);
    if (!file) throw InputError("cannot open " + path.string() + " for writing");

    auto sorted = config;
    std::sort(sorted.begin(), sorted.end());
    std::string out;
    for (const auto& [key, value] : sorted) {
        out += "# ";
        out += key;
        out += '=';
        out += value;
        out += '\n';
    }
    for (int it = 0; it < mesh.nt; ++it) {
        for (int is = 0; is < mesh.ns; ++is) {
            const Vec3& v = mesh.vertex(it, is);
            out += "v ";
            out += format_double(v[0]);
            out += ' ';
            out += format_double(v[1]);
            out += ' ';
            out += format_double(v[2]);
            out += '\n';
        }
    }

    auto index = [&](int it, int is) { return it * mesh.ns + is + 1; };
    auto emit = [&](int a, int b, int c) {
        out += "f ";
        out += std::to_string(a);
        out += ' ';
        out += std::to_string(b);
        out += ' ';
        out += std::to_string(c);
        out += '\n';
    };
    for (int it = 0; it + 1 < mesh.nt; ++it) {
        for (int is = 0; is + 1 < mesh.ns; ++is) {
            int a = index(it, is);
            int b = index(it + 1, is);
            int c = index(it + 1, is + 1);
            int d = index(it, is + 1);
            double diag_ac = (mesh.vertex(it, is) - mesh.vertex(it + 1, is + 1)).norm();
            double diag_bd = (mesh.vertex(it + 1, is) - mesh.vertex(it, is + 1)).norm();
            if (diag_ac <= diag_bd) {
                emit(a, b, c);
                emit(a, c, d);
            } else {
                emit(b, c, d);
                emit(b, d, a);
            }
        }
    }

    file << out;
    if (!file) throw InputError("failed while writing " + path.string());
}

}  // namespace ribbonlim
