#include "otdp/io.hpp"

#include <charconv>
#include <cmath>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace otdp {

std::string format_double(double v) {
    // Shortest round-trippable representation.
    char buf[32];
    const auto result = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, result.ptr);
}

void write_points_csv(std::ostream& os, const PointSet& points) {
    for (int a = 0; a < points.d; ++a) {
        os << (a == 0 ? "" : ",") << "x" << a + 1;
    }
    os << '\n';
    for (std::size_t i = 0; i < points.n; ++i) {
        const auto row = points.row(i);
        for (int a = 0; a < points.d; ++a) {
            os << (a == 0 ? "" : ",") << format_double(row[a]);
        }
        os << '\n';
    }
}

PointSet read_points_csv(std::istream& is) {
    std::string line;
    if (!std::getline(is, line)) {
        throw std::runtime_error("points CSV is empty");
    }
    int d = 1;
    for (char c : line) {
        if (c == ',') ++d;
    }
    std::vector<double> data;
    while (std::getline(is, line)) {
        if (line.empty()) continue;
        std::stringstream ss(line);
        std::string cell;
        int got = 0;
        while (std::getline(ss, cell, ',')) {
            data.push_back(std::stod(cell));
            ++got;
        }
        if (got != d) throw std::runtime_error("points CSV has a ragged row");
    }
    if (data.empty()) throw std::runtime_error("points CSV has no data rows");
    PointSet points(data.size() / static_cast<std::size_t>(d), d);
    points.data = std::move(data);
    return points;
}

void write_map_csv(std::ostream& os, const GridVectorField& field) {
    const int d = field.spec.dim();
    for (int a = 0; a < d; ++a) os << (a == 0 ? "" : ",") << "x" << a + 1;
    for (int a = 0; a < d; ++a) os << ",t" << a + 1;
    os << '\n';
    std::vector<double> p(static_cast<std::size_t>(d));
    for (std::size_t i = 0; i < field.spec.size(); ++i) {
        field.spec.point(i, p);
        for (int a = 0; a < d; ++a) {
            os << (a == 0 ? "" : ",") << format_double(p[a]);
        }
        const auto t = field.at(i);
        for (int a = 0; a < d; ++a) os << ',' << format_double(t[a]);
        os << '\n';
    }
}

void write_density_csv(std::ostream& os, const GridPotential& density) {
    const int d = density.spec.dim();
    for (int a = 0; a < d; ++a) os << (a == 0 ? "" : ",") << "x" << a + 1;
    os << ",density\n";
    std::vector<double> p(static_cast<std::size_t>(d));
    for (std::size_t i = 0; i < density.spec.size(); ++i) {
        density.spec.point(i, p);
        for (int a = 0; a < d; ++a) {
            os << (a == 0 ? "" : ",") << format_double(p[a]);
        }
        os << ',' << format_double(density.values[i]) << '\n';
    }
}

}  // namespace otdp
