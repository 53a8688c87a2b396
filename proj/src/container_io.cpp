#include "sarnav/container_io.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>

#include "sarnav/errors.hpp"

static_assert(std::endian::native == std::endian::little,
              "container format assumes a little-endian host");

namespace sarnav {

namespace {

constexpr char kMagic[8] = {'S', 'A', 'R', 'N', 'A', 'V', '1', '\0'};

using Header = std::map<std::string, std::string, std::less<>>;

std::string header_text(const Header& h) {
    std::string out;
    for (const auto& [k, v] : h) out += k + "=" + v + "\n";
    return out;
}

Header parse_header(const std::string& text, const std::string& path) {
    Header h;
    std::istringstream is(text);
    std::string line;
    while (std::getline(is, line)) {
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw ParseError(path + ": malformed header line '" + line + "'");
        h[line.substr(0, eq)] = line.substr(eq + 1);
    }
    return h;
}

std::string fmt(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::string fmt(const Vec3& v) { return fmt(v.x) + " " + fmt(v.y) + " " + fmt(v.z); }

const std::string& want(const Header& h, const std::string& key, const std::string& path) {
    const auto it = h.find(key);
    if (it == h.end()) throw ParseError(path + ": missing header key '" + key + "'");
    return it->second;
}

double want_num(const Header& h, const std::string& key, const std::string& path) {
    return std::stod(want(h, key, path));
}

Vec3 want_vec3(const Header& h, const std::string& key, const std::string& path) {
    std::istringstream is(want(h, key, path));
    Vec3 v;
    if (!(is >> v.x >> v.y >> v.z))
        throw ParseError(path + ": header key '" + key + "' is not a 3-vector");
    return v;
}

void write_container(const std::string& path, const Header& h,
                     std::span<const double> payload) {
    namespace fs = std::filesystem;
    const fs::path target(path);
    const fs::path tmp = target.parent_path() / (target.filename().string() + ".tmp");
    {
        std::ofstream os(tmp, std::ios::binary | std::ios::trunc);
        if (!os) throw Error("cannot open " + tmp.string() + " for writing");
        const std::string head = header_text(h);
        const auto head_len = static_cast<std::uint32_t>(head.size());
        os.write(kMagic, sizeof kMagic);
        os.write(reinterpret_cast<const char*>(&head_len), sizeof head_len);
        os.write(head.data(), static_cast<std::streamsize>(head.size()));
        os.write(reinterpret_cast<const char*>(payload.data()),
                 static_cast<std::streamsize>(payload.size() * sizeof(double)));
        if (!os) throw Error("write failed for " + tmp.string());
    }
    fs::rename(tmp, target);
}

struct Container {
    Header header;
    std::vector<double> payload;
};

Container read_container(const std::string& path) {
    std::ifstream is(path, std::ios::binary);
    if (!is) throw Error("cannot open " + path);
    char magic[8];
    is.read(magic, sizeof magic);
    if (!is || !std::equal(magic, magic + 8, kMagic))
        throw ParseError(path + ": bad magic, not a SARNAV container");
    std::uint32_t head_len = 0;
    is.read(reinterpret_cast<char*>(&head_len), sizeof head_len);
    std::string head(head_len, '\0');
    is.read(head.data(), head_len);
    if (!is) throw ParseError(path + ": truncated header");
    Container c;
    c.header = parse_header(head, path);
    std::vector<char> rest((std::istreambuf_iterator<char>(is)),
                           std::istreambuf_iterator<char>());
    if (rest.size() % sizeof(double) != 0)
        throw ParseError(path + ": payload is not a whole number of float64 values");
    c.payload.resize(rest.size() / sizeof(double));
    std::copy(rest.begin(), rest.end(), reinterpret_cast<char*>(c.payload.data()));
    return c;
}

} // namespace

void save_data_matrix(const DataMatrix& dm, const std::string& path) {
    dm.validate();
    Header h;
    h["version"] = "1";
    h["kind"] = dm.kind == DataMatrix::Kind::Raw ? "raw" : "range_compressed";
    h["n_pulses"] = std::to_string(dm.n_pulses);
    h["n_fast"] = std::to_string(dm.n_fast);
    h["fs"] = fmt(dm.fs);
    h["t_start"] = fmt(dm.t_start);
    h["prf"] = fmt(dm.prf);
    std::vector<double> payload;
    payload.reserve(dm.values.size() * 2);
    for (const cplx& v : dm.values) {
        payload.push_back(v.real());
        payload.push_back(v.imag());
    }
    write_container(path, h, payload);
}

DataMatrix load_data_matrix(const std::string& path) {
    const Container c = read_container(path);
    const std::string& kind = want(c.header, "kind", path);
    DataMatrix dm;
    if (kind == "raw")
        dm.kind = DataMatrix::Kind::Raw;
    else if (kind == "range_compressed")
        dm.kind = DataMatrix::Kind::RangeCompressed;
    else
        throw ParseError(path + ": unknown data matrix kind '" + kind + "'");
    dm.n_pulses = static_cast<std::size_t>(want_num(c.header, "n_pulses", path));
    dm.n_fast = static_cast<std::size_t>(want_num(c.header, "n_fast", path));
    dm.fs = want_num(c.header, "fs", path);
    dm.t_start = want_num(c.header, "t_start", path);
    dm.prf = want_num(c.header, "prf", path);
    if (c.payload.size() != dm.n_pulses * dm.n_fast * 2)
        throw ParseError(path + ": payload size does not match dims");
    dm.values.resize(dm.n_pulses * dm.n_fast);
    for (std::size_t i = 0; i < dm.values.size(); ++i)
        dm.values[i] = {c.payload[2 * i], c.payload[2 * i + 1]};
    dm.validate();
    return dm;
}

void save_image(const ComplexImage& img, const std::string& path) {
    img.grid.validate();
    Header h;
    h["version"] = "1";
    h["kind"] = "image";
    h["n_along"] = std::to_string(img.grid.n_along);
    h["n_cross"] = std::to_string(img.grid.n_cross);
    h["origin"] = fmt(img.grid.origin);
    h["axis_along"] = fmt(img.grid.axis_along);
    h["axis_cross"] = fmt(img.grid.axis_cross);
    h["spacing_along"] = fmt(img.grid.spacing_along);
    h["spacing_cross"] = fmt(img.grid.spacing_cross);
    std::vector<double> payload;
    payload.reserve(img.values.size() * 3);
    for (const cplx& v : img.values) {
        payload.push_back(v.real());
        payload.push_back(v.imag());
    }
    payload.insert(payload.end(), img.skipped_fraction.begin(), img.skipped_fraction.end());
    write_container(path, h, payload);
}

ComplexImage load_image(const std::string& path) {
    const Container c = read_container(path);
    if (want(c.header, "kind", path) != "image")
        throw ParseError(path + ": not an image container");
    ComplexImage img;
    img.grid.n_along = static_cast<std::size_t>(want_num(c.header, "n_along", path));
    img.grid.n_cross = static_cast<std::size_t>(want_num(c.header, "n_cross", path));
    img.grid.origin = want_vec3(c.header, "origin", path);
    img.grid.axis_along = want_vec3(c.header, "axis_along", path);
    img.grid.axis_cross = want_vec3(c.header, "axis_cross", path);
    img.grid.spacing_along = want_num(c.header, "spacing_along", path);
    img.grid.spacing_cross = want_num(c.header, "spacing_cross", path);
    const std::size_t n = img.grid.size();
    if (c.payload.size() != n * 3)
        throw ParseError(path + ": payload size does not match dims");
    img.values.resize(n);
    for (std::size_t i = 0; i < n; ++i) img.values[i] = {c.payload[2 * i], c.payload[2 * i + 1]};
    img.skipped_fraction.assign(c.payload.begin() + static_cast<std::ptrdiff_t>(2 * n),
                                c.payload.end());
    img.grid.validate();
    return img;
}

void render_image_pgm(const ComplexImage& img, const std::string& path, double db_floor) {
    if (db_floor >= 0.0) throw ValidationError("db_floor must be negative");
    double peak = 0.0;
    for (const cplx& v : img.values) peak = std::max(peak, std::abs(v));
    if (peak == 0.0) throw DegenerateImageError("cannot render an all-zero image");

    std::ostringstream os;
    os << "P5\n" << img.grid.n_cross << " " << img.grid.n_along << "\n255\n";
    for (std::size_t i = 0; i < img.grid.n_along; ++i) {
        for (std::size_t j = 0; j < img.grid.n_cross; ++j) {
            const double mag = std::abs(img.at(i, j));
            double db = mag > 0.0 ? 20.0 * std::log10(mag / peak) : db_floor;
            db = std::clamp(db, db_floor, 0.0);
            const double level = 255.0 * (db - db_floor) / (0.0 - db_floor);
            os.put(static_cast<char>(static_cast<unsigned char>(std::lround(level))));
        }
    }
    write_text_atomic(path, os.str());
}

void write_text_atomic(const std::string& path, const std::string& text) {
    namespace fs = std::filesystem;
    const fs::path target(path);
    const fs::path tmp = target.parent_path() / (target.filename().string() + ".tmp");
    {
        std::ofstream os(tmp, std::ios::binary | std::ios::trunc);
        if (!os) throw Error("cannot open " + tmp.string() + " for writing");
        os.write(text.data(), static_cast<std::streamsize>(text.size()));
        if (!os) throw Error("write failed for " + tmp.string());
    }
    fs::rename(tmp, target);
}

} // namespace sarnav
