#include "ccym/io.hpp"

#include <cstring>
#include <fstream>
#include <iomanip>
#include <istream>
#include <limits>
#include <ostream>
#include <sstream>

#include "ccym/errors.hpp"
#include "json.hpp"

namespace ccym {

using nlohmann::json;

void write_field(std::ostream& os, const GridField& f, Encoding enc) {
    json h;
    h["format"] = "ccym-field";
    h["version"] = 1;
    h["points"] = f.grid->points();
    h["lengths"] = f.grid->lengths();
    h["slots"] = slot_string(f.slots);
    h["matrix_dim"] = f.N;
    h["lie"] = f.meta.lie;
    if (f.meta.weight) h["weight"] = *f.meta.weight;
    else h["weight"] = nullptr;
    h["components"] = f.c.size();
    h["count"] = f.c.size() * f.grid->size() * static_cast<std::size_t>(f.N) * f.N;
    h["encoding"] = enc == Encoding::Text ? "text" : "binary-f64le";
    h["order"] = "component,point,row,col";
    os << h.dump() << '\n';
    if (enc == Encoding::Text) {
        os << std::setprecision(17);
        for (const auto& comp : f.c)
            for (const auto& v : comp.data()) os << v.real() << ' ' << v.imag() << '\n';
    } else {
        for (const auto& comp : f.c)
            for (const auto& v : comp.data()) {
                const double re = v.real(), im = v.imag();
                os.write(reinterpret_cast<const char*>(&re), sizeof(double));
                os.write(reinterpret_cast<const char*>(&im), sizeof(double));
            }
    }
    if (!os) throw Error("write_field: stream failure");
}

GridField read_field(std::istream& is) {
    std::string line;
    if (!std::getline(is, line)) throw Error("read_field: missing header line");
    json h;
    try {
        h = json::parse(line);
    } catch (const json::exception& e) {
        throw Error(std::string("read_field: header is not JSON: ") + e.what());
    }
    if (h.value("format", "") != "ccym-field") throw Error("read_field: not a ccym-field blob");
    auto grid = Grid::make(h.at("points").get<std::vector<int>>(), h.at("lengths").get<std::vector<double>>());
    FieldMeta meta;
    meta.lie = h.value("lie", false);
    if (h.contains("weight") && !h["weight"].is_null()) meta.weight = h["weight"].get<int>();
    GridField f(grid, parse_slots(h.at("slots").get<std::string>()), h.at("matrix_dim").get<int>(), meta);
    const std::size_t expect = f.c.size() * grid->size() * static_cast<std::size_t>(f.N) * f.N;
    if (h.at("count").get<std::size_t>() != expect) throw ShapeError("read_field: count disagrees with header shape");
    const std::string enc = h.value("encoding", "text");
    for (auto& comp : f.c)
        for (auto& v : comp.data()) {
            double re = 0.0, im = 0.0;
            if (enc == "text") {
                if (!(is >> re >> im)) throw Error("read_field: truncated text payload");
            } else if (enc == "binary-f64le") {
                is.read(reinterpret_cast<char*>(&re), sizeof(double));
                is.read(reinterpret_cast<char*>(&im), sizeof(double));
                if (!is) throw Error("read_field: truncated binary payload");
            } else {
                throw Error("read_field: unknown encoding " + enc);
            }
            v = cplx(re, im);
        }
    return f;
}

void save_field(const std::string& path, const GridField& f, Encoding enc) {
    std::ofstream os(path, std::ios::binary);
    if (!os) throw Error("save_field: cannot open " + path);
    write_field(os, f, enc);
}

GridField load_field(const std::string& path) {
    std::ifstream is(path, std::ios::binary);
    if (!is) throw Error("load_field: cannot open " + path);
    return read_field(is);
}

}  // namespace ccym
