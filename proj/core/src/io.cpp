#include "qca/io.hpp"

#include <cstdint>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace qca::io {

namespace fs = std::filesystem;

std::string format_double(double x) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", x);
    return buf;
}

void atomic_write_text(const fs::path& path, const std::string& content) {
    if (path.has_parent_path()) fs::create_directories(path.parent_path());
    const fs::path tmp = path.string() + ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw Error("cannot open " + tmp.string() + " for writing");
        out.write(content.data(), static_cast<std::streamsize>(content.size()));
        if (!out) throw Error("write failed: " + tmp.string());
    }
    fs::rename(tmp, path);
}

CsvTable::CsvTable(std::vector<std::string> header) : header_(std::move(header)) {
    if (header_.empty()) throw ConfigError("CSV header must not be empty");
}

void CsvTable::add_row(const std::vector<double>& values) {
    std::vector<std::string> cells;
    cells.reserve(values.size());
    for (double v : values) cells.push_back(format_double(v));
    add_row(cells);
}

void CsvTable::add_row(const std::vector<std::string>& cells) {
    if (cells.size() != header_.size()) throw ConfigError("CSV row width mismatch");
    rows_.push_back(cells);
}

std::string CsvTable::to_string() const {
    std::ostringstream os;
    auto emit = [&os](const std::vector<std::string>& cells) {
        for (std::size_t i = 0; i < cells.size(); ++i) os << (i ? "," : "") << cells[i];
        os << '\n';
    };
    emit(header_);
    for (const auto& row : rows_) emit(row);
    return os.str();
}

void CsvTable::write(const fs::path& path) const { atomic_write_text(path, to_string()); }

void write_gnuplot_script(const fs::path& csv_path, const std::string& title,
                          const std::vector<std::string>& y_columns,
                          const std::string& x_column) {
    std::ostringstream os;
    os << "# plot script for " << csv_path.filename().string() << '\n';
    os << "set datafile separator \",\"\n";
    os << "set key autotitle columnhead\n";
    os << "set key outside\n";
    os << "set title \"" << title << "\"\n";
    os << "set xlabel \"" << x_column << "\"\n";
    os << "plot ";
    for (std::size_t i = 0; i < y_columns.size(); ++i) {
        if (i) os << ", \\\n     ";
        os << '"' << csv_path.filename().string() << "\" using \"" << x_column << "\":\""
           << y_columns[i] << "\" with lines";
    }
    os << '\n';
    atomic_write_text(csv_path.string() + ".gp", os.str());
}

namespace {

void require_little_endian() {
    const std::uint16_t probe = 1;
    if (*reinterpret_cast<const std::uint8_t*>(&probe) != 1)
        throw Error("snapshot format requires a little-endian host");
}

}  // namespace

void write_snapshot(const fs::path& path, const lattice::SpinorField& field) {
    require_little_endian();
    std::ostringstream os;
    os << "qca-field 1\n";
    os << "shape";
    for (int i = 0; i < field.shape.size(); ++i) os << ' ' << field.shape[i];
    os << '\n';
    os << "spin " << field.spin << '\n';
    os << "endianness little\n";
    os << "payload complex128-interleaved\n";
    os << '\n';
    std::string content = os.str();
    content.append(reinterpret_cast<const char*>(field.data.data()),
                   static_cast<std::size_t>(field.data.size()) * sizeof(cplx));
    atomic_write_text(path, content);
}

lattice::SpinorField read_snapshot(const fs::path& path) {
    require_little_endian();
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error("cannot open snapshot " + path.string());

    std::vector<int> shape;
    int spin = -1;
    std::string line;
    bool magic_seen = false;
    while (std::getline(in, line)) {
        if (line.empty()) break;
        std::istringstream ls(line);
        std::string tag;
        ls >> tag;
        if (tag == "qca-field") {
            int version = 0;
            ls >> version;
            if (version != 1) throw Error("unsupported snapshot version");
            magic_seen = true;
        } else if (tag == "shape") {
            int v;
            while (ls >> v) shape.push_back(v);
        } else if (tag == "spin") {
            ls >> spin;
        } else if (tag == "endianness") {
            std::string e;
            ls >> e;
            if (e != "little") throw Error("unsupported snapshot endianness");
        } else if (tag == "payload") {
            std::string p;
            ls >> p;
            if (p != "complex128-interleaved") throw Error("unsupported snapshot payload");
        } else {
            throw Error("unknown snapshot header line: " + line);
        }
    }
    if (!magic_seen || shape.empty() || spin < 1) throw Error("malformed snapshot header");

    IVec ishape(static_cast<int>(shape.size()));
    std::int64_t sites = 1;
    for (std::size_t i = 0; i < shape.size(); ++i) {
        ishape[static_cast<int>(i)] = shape[i];
        sites *= shape[i];
    }
    lattice::SpinorField field = lattice::zero_field(ishape, spin);
    const std::streamsize bytes =
        static_cast<std::streamsize>(sites * spin) * static_cast<std::streamsize>(sizeof(cplx));
    in.read(reinterpret_cast<char*>(field.data.data()), bytes);
    if (in.gcount() != bytes) throw Error("snapshot payload truncated");
    return field;
}

namespace {

std::string trim(const std::string& s) {
    std::size_t b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return "";
    std::size_t e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

}  // namespace

std::map<std::string, std::string> parse_config_text(const std::string& text) {
    std::map<std::string, std::string> config;
    std::istringstream in(text);
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const std::string stripped = trim(line);
        if (stripped.empty() || stripped[0] == '#') continue;
        const std::size_t eq = stripped.find('=');
        if (eq == std::string::npos)
            throw ConfigError("config line " + std::to_string(lineno) + " is not key = value");
        const std::string key = trim(stripped.substr(0, eq));
        const std::string value = trim(stripped.substr(eq + 1));
        if (key.empty()) throw ConfigError("config line " + std::to_string(lineno) + " has no key");
        config[key] = value;
    }
    return config;
}

std::map<std::string, std::string> read_config_file(const fs::path& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file " + path.string());
    std::ostringstream os;
    os << in.rdbuf();
    return parse_config_text(os.str());
}

}  // namespace qca::io
