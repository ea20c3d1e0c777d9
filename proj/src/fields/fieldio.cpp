#include "afcdm/fieldio.hpp"

#include <cinttypes>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <vector>

namespace afcdm {

namespace {

constexpr char kMagic[6] = {'A', 'F', 'L', 'D', '1', '\n'};

template <typename T>
void put(std::ofstream& os, T v) {
    os.write(reinterpret_cast<const char*>(&v), sizeof(T));
}

template <typename T>
T get(std::ifstream& is) {
    T v{};
    is.read(reinterpret_cast<char*>(&v), sizeof(T));
    if (!is) throw IoError("truncated field file");
    return v;
}

}  // namespace

void write_field_binary(const std::filesystem::path& path, const ScalarField& f) {
    std::ofstream os(path, std::ios::binary);
    if (!os) throw IoError("cannot open " + path.string() + " for writing");
    os.write(kMagic, sizeof(kMagic));
    const Grid& g = *f.grid();
    put<std::uint32_t>(os, static_cast<std::uint32_t>(g.naxes()));
    for (Ax a : g.axes()) {
        const Axis& ax = g.axis(a);
        put<std::uint8_t>(os, static_cast<std::uint8_t>(a));
        put<double>(os, ax.lo);
        put<double>(os, ax.hi);
        put<std::uint32_t>(os, static_cast<std::uint32_t>(ax.n));
    }
    put<std::uint8_t>(os, f.deps());
    put<std::uint64_t>(os, static_cast<std::uint64_t>(f.size()));
    os.write(reinterpret_cast<const char*>(f.samples().data()),
             static_cast<std::streamsize>(f.size() * sizeof(double)));
    if (!os) throw IoError("write failure on " + path.string());
}

ScalarField read_field_binary(const std::filesystem::path& path) {
    std::ifstream is(path, std::ios::binary);
    if (!is) throw IoError("cannot open " + path.string());
    char magic[6];
    is.read(magic, sizeof(magic));
    if (!is || std::memcmp(magic, kMagic, sizeof(kMagic)) != 0)
        throw IoError(path.string() + ": not a field file");
    const auto naxes = get<std::uint32_t>(is);
    if (naxes == 0 || naxes > kMaxAxes) throw IoError(path.string() + ": bad axis count");
    std::vector<Axis> axes;
    for (std::uint32_t i = 0; i < naxes; ++i) {
        const auto id = get<std::uint8_t>(is);
        const double lo = get<double>(is);
        const double hi = get<double>(is);
        const auto n = get<std::uint32_t>(is);
        axes.emplace_back(static_cast<Ax>(id), lo, hi, static_cast<int>(n));
    }
    const DepMask deps = get<std::uint8_t>(is);
    const auto count = get<std::uint64_t>(is);
    std::vector<double> samples(count);
    is.read(reinterpret_cast<char*>(samples.data()),
            static_cast<std::streamsize>(count * sizeof(double)));
    if (!is) throw IoError(path.string() + ": truncated samples");
    return ScalarField(make_grid(std::move(axes)), deps, std::move(samples));
}

void write_field_csv(const std::filesystem::path& path, const ScalarField& f) {
    std::FILE* fp = std::fopen(path.string().c_str(), "w");
    if (!fp) throw IoError("cannot open " + path.string() + " for writing");
    const Grid& g = *f.grid();
    for (Ax a : g.axes()) {
        const Axis& ax = g.axis(a);
        std::fprintf(fp, "# axis,%s,%.17g,%.17g,%d\n", axis_name(a).c_str(), ax.lo, ax.hi, ax.n);
    }
    std::fprintf(fp, "# deps");
    for (Ax a : f.dep_axes()) std::fprintf(fp, ",%s", axis_name(a).c_str());
    std::fprintf(fp, "\n# count,%zu\n", f.size());
    for (double v : f.samples()) std::fprintf(fp, "%.17g\n", v);
    if (std::fclose(fp) != 0) throw IoError("write failure on " + path.string());
}

ScalarField read_field_csv(const std::filesystem::path& path) {
    std::ifstream is(path);
    if (!is) throw IoError("cannot open " + path.string());
    std::vector<Axis> axes;
    DepMask deps = 0;
    std::size_t count = 0;
    std::vector<double> samples;
    std::string line;
    while (std::getline(is, line)) {
        if (line.empty()) continue;
        if (line[0] == '#') {
            std::vector<std::string> parts;
            std::size_t pos = 1;
            while (pos < line.size()) {
                const auto comma = line.find(',', pos);
                parts.push_back(line.substr(pos, comma == std::string::npos ? comma : comma - pos));
                if (comma == std::string::npos) break;
                pos = comma + 1;
            }
            if (parts.empty()) continue;
            // strip leading space of the tag
            std::string tag = parts[0];
            while (!tag.empty() && tag.front() == ' ') tag.erase(tag.begin());
            if (tag == "axis" && parts.size() == 5) {
                axes.emplace_back(axis_from_name(parts[1]), std::stod(parts[2]), std::stod(parts[3]),
                                  std::stoi(parts[4]));
            } else if (tag == "deps") {
                for (std::size_t i = 1; i < parts.size(); ++i) deps |= mask_of(axis_from_name(parts[i]));
            } else if (tag == "count" && parts.size() == 2) {
                count = static_cast<std::size_t>(std::stoull(parts[1]));
                samples.reserve(count);
            }
            continue;
        }
        samples.push_back(std::stod(line));
    }
    if (count != 0 && samples.size() != count)
        throw IoError(path.string() + ": sample count mismatch");
    return ScalarField(make_grid(std::move(axes)), deps, std::move(samples));
}

void write_field(const std::filesystem::path& path, const ScalarField& f) {
    if (path.extension() == ".csv")
        write_field_csv(path, f);
    else
        write_field_binary(path, f);
}

ScalarField read_field(const std::filesystem::path& path) {
    return path.extension() == ".csv" ? read_field_csv(path) : read_field_binary(path);
}

}  // namespace afcdm
