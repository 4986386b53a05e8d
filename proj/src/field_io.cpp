#include "cliffmoll/field_io.hpp"

#include <bit>
#include <charconv>
#include <cstdio>
#include <cstring>
#include <memory>
#include <sstream>
#include <stdexcept>

namespace cliffmoll {

static_assert(std::endian::native == std::endian::little, "CLF1 I/O assumes a little-endian host");

namespace {

std::string format_double(double v) {
    char buf[32];
    auto [p, ec] = std::to_chars(buf, buf + sizeof(buf), v);
    if (ec != std::errc{}) throw std::runtime_error("CLF1: number formatting failed");
    return std::string(buf, p);
}

struct FileCloser {
    void operator()(std::FILE* f) const { if (f) std::fclose(f); }
};
using FilePtr = std::unique_ptr<std::FILE, FileCloser>;

[[noreturn]] void bad(const std::string& what) { throw std::runtime_error("CLF1: " + what); }

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> out;
    size_t start = 0;
    while (true) {
        const size_t pos = s.find(sep, start);
        out.push_back(s.substr(start, pos - start));
        if (pos == std::string::npos) break;
        start = pos + 1;
    }
    return out;
}

long long parse_int(const std::string& s) {
    long long v = 0;
    auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc{} || p != s.data() + s.size()) bad("malformed integer '" + s + "' in header");
    return v;
}

double parse_num(const std::string& s) {
    double v = 0.0;
    auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc{} || p != s.data() + s.size()) bad("malformed number '" + s + "' in header");
    return v;
}

}  // namespace

void write_field(const CliffordField& f, const std::string& path) {
    const Grid& g = f.grid();
    std::ostringstream head;
    head << "CLF1 n=" << f.algebra_dim() << " dims=";
    for (int a = 0; a < g.n; ++a) head << (a ? "," : "") << g.dims[a];
    head << " origin=";
    for (int a = 0; a < g.n; ++a) head << (a ? "," : "") << format_double(g.origin[a]);
    head << " spacing=";
    for (int a = 0; a < g.n; ++a) head << (a ? "," : "") << format_double(g.spacing[a]);
    head << " components=" << f.component_count() << " encoding=le-f64\n";

    FilePtr fp(std::fopen(path.c_str(), "wb"));
    if (!fp) bad("cannot open '" + path + "' for writing");
    const std::string h = head.str();
    if (std::fwrite(h.data(), 1, h.size(), fp.get()) != h.size()) bad("short write");

    const size_t nodes = g.size();
    const size_t comps = f.component_count();
    std::vector<double> row(comps);
    for (size_t i = 0; i < nodes; ++i) {
        for (size_t m = 0; m < comps; ++m) row[m] = f.coeff(i, m);
        if (std::fwrite(row.data(), sizeof(double), comps, fp.get()) != comps) bad("short write");
    }
    if (std::fwrite(f.inside().data(), 1, nodes, fp.get()) != nodes) bad("short write");
}

CliffordField read_field(const std::string& path) {
    FilePtr fp(std::fopen(path.c_str(), "rb"));
    if (!fp) bad("cannot open '" + path + "'");

    std::string header;
    for (int c = std::fgetc(fp.get()); c != '\n'; c = std::fgetc(fp.get())) {
        if (c == EOF) bad("missing header line");
        header.push_back(static_cast<char>(c));
        if (header.size() > 4096) bad("header line too long");
    }

    std::istringstream hs(header);
    std::string magic;
    hs >> magic;
    if (magic != "CLF1") bad("version mismatch: expected CLF1 header, got '" + magic + "'");

    int n = -1;
    std::vector<int> dims;
    std::vector<double> origin, spacing;
    long long components = -1;
    std::string encoding;
    std::string kv;
    while (hs >> kv) {
        const size_t eq = kv.find('=');
        if (eq == std::string::npos) bad("malformed header token '" + kv + "'");
        const std::string key = kv.substr(0, eq);
        const std::string val = kv.substr(eq + 1);
        if (key == "n") {
            n = static_cast<int>(parse_int(val));
        } else if (key == "dims") {
            for (const auto& t : split(val, ',')) dims.push_back(static_cast<int>(parse_int(t)));
        } else if (key == "origin") {
            for (const auto& t : split(val, ',')) origin.push_back(parse_num(t));
        } else if (key == "spacing") {
            for (const auto& t : split(val, ',')) spacing.push_back(parse_num(t));
        } else if (key == "components") {
            components = parse_int(val);
        } else if (key == "encoding") {
            encoding = val;
        } else {
            bad("unknown header key '" + key + "'");
        }
    }
    if (n < 1 || n > kMaxDim) bad("dimension out of range");
    if (static_cast<int>(dims.size()) != n || static_cast<int>(origin.size()) != n ||
        static_cast<int>(spacing.size()) != n)
        bad("header dimension mismatch");
    if (components != (1LL << n)) bad("component count does not match 2^n");
    if (encoding != "le-f64") bad("unsupported encoding '" + encoding + "'");
    for (int d : dims)
        if (d < 2) bad("dims must be >= 2");
    for (double h : spacing)
        if (!(h > 0.0)) bad("spacing must be positive");

    Grid g;
    g.n = n;
    g.dims = dims;
    g.origin = origin;
    g.spacing = spacing;

    CliffordField f(g, n);
    const size_t nodes = g.size();
    const size_t comps = size_t{1} << n;
    std::vector<std::vector<double>*> planes(comps);
    for (size_t m = 0; m < comps; ++m) planes[m] = &f.component(m);
    std::vector<double> row(comps);
    for (size_t i = 0; i < nodes; ++i) {
        if (std::fread(row.data(), sizeof(double), comps, fp.get()) != comps) bad("truncated payload");
        for (size_t m = 0; m < comps; ++m) (*planes[m])[i] = row[m];
    }
    if (std::fread(f.inside().data(), 1, nodes, fp.get()) != nodes) bad("truncated mask");
    if (std::fgetc(fp.get()) != EOF) bad("trailing bytes after payload");
    f.drop_zero_components();
    return f;
}

}  // namespace cliffmoll
