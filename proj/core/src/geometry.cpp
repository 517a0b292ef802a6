// SPDX-License-Identifier: Apache-2.0
//
// macrb - movable-antenna array CRB characterization and optimization
// Copyright (C) 2026 The macrb Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------


#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>

#include "macrb/csv.hpp"
#include "macrb/errors.hpp"
#include "macrb/geometry.hpp"

namespace macrb
{

std::string GeometryViolation::describe() const
{
    std::ostringstream os;
    if (kind == Kind::outside_region)
        os << "antenna " << first << " outside region (|coordinate| = " << value << ")";
    else
        os << "antennas " << first << " and " << second << " closer than d_min (distance = " << value << ")";
    return os.str();
}

std::vector<GeometryViolation> validate_geometry(const ArrayGeometry &geometry)
{
    std::vector<GeometryViolation> out;
    const double half = geometry.region_size / 2.0;
    const auto n = static_cast<int>(geometry.size());
    for (int i = 0; i < n; ++i)
    {
        const auto &p = geometry.positions[static_cast<std::size_t>(i)];
        const double extent = std::max(std::abs(p.x), std::abs(p.y));
        if (!(extent <= half))
            out.push_back({GeometryViolation::Kind::outside_region, i, -1, extent});
    }
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
        {
            const double d = distance(geometry.positions[static_cast<std::size_t>(i)],
                                      geometry.positions[static_cast<std::size_t>(j)]);
            if (d < geometry.min_spacing)
                out.push_back({GeometryViolation::Kind::too_close, i, j, d});
        }
    return out;
}

bool respects_spacing(const ArrayGeometry &geometry, Point2 candidate, int skip)
{
    for (std::size_t i = 0; i < geometry.size(); ++i)
    {
        if (static_cast<int>(i) == skip)
            continue;
        if (distance(geometry.positions[i], candidate) < geometry.min_spacing)
            return false;
    }
    return true;
}

GeometryMoments geometry_moments(const ArrayGeometry &geometry)
{
    GeometryMoments m;
    const double n = static_cast<double>(geometry.size());
    if (geometry.size() == 0)
        return m;
    for (const auto &p : geometry.positions)
    {
        m.mean_x += p.x;
        m.mean_y += p.y;
    }
    m.mean_x /= n;
    m.mean_y /= n;
    for (const auto &p : geometry.positions)
    {
        const double dx = p.x - m.mean_x;
        const double dy = p.y - m.mean_y;
        m.var_x += dx * dx;
        m.var_y += dy * dy;
        m.cov_xy += dx * dy;
    }
    m.var_x /= n;
    m.var_y /= n;
    m.cov_xy /= n;
    return m;
}

double mean_distance_from_origin(const ArrayGeometry &geometry)
{
    if (geometry.size() == 0)
        return 0.0;
    double sum = 0.0;
    for (const auto &p : geometry.positions)
        sum += p.norm();
    return sum / static_cast<double>(geometry.size());
}

void write_geometry_csv(const ArrayGeometry &geometry, const std::filesystem::path &path)
{
    std::ofstream out(path);
    if (!out)
        throw InvalidInput("cannot write geometry file " + path.string());
    out << "n,x,y\n";
    for (std::size_t i = 0; i < geometry.size(); ++i)
        out << i << ',' << format_double(geometry.positions[i].x) << ',' << format_double(geometry.positions[i].y)
            << '\n';
}

ArrayGeometry read_geometry_csv(const std::filesystem::path &path, double region_size, double min_spacing)
{
    std::ifstream in(path);
    if (!in)
        throw InvalidInput("cannot read geometry file " + path.string());
    std::string line;
    if (!std::getline(in, line) || line.rfind("n,x,y", 0) != 0)
        throw InvalidInput("geometry file must start with header n,x,y: " + path.string());

    ArrayGeometry g{{}, region_size, min_spacing};
    while (std::getline(in, line))
    {
        if (line.empty() || line == "\r")
            continue;
        const auto fields = split_csv_line(line);
        if (fields.size() != 3)
            throw InvalidInput("geometry row needs 3 fields: " + line);
        g.positions.push_back({parse_double(fields[1]), parse_double(fields[2])});
    }
    return g;
}

std::string format_double(double value)
{
    if (std::isnan(value))
        return "nan";
    if (std::isinf(value))
        return value > 0 ? "inf" : "-inf";
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof(buf), value);
    return std::string(buf, res.ptr);
}

double parse_double(std::string_view text)
{
    while (!text.empty() && (text.front() == ' ' || text.front() == '\t'))
        text.remove_prefix(1);
    while (!text.empty() && (text.back() == ' ' || text.back() == '\t' || text.back() == '\r'))
        text.remove_suffix(1);
    if (text == "nan")
        return std::numeric_limits<double>::quiet_NaN();
    if (text == "inf")
        return std::numeric_limits<double>::infinity();
    if (text == "-inf")
        return -std::numeric_limits<double>::infinity();
    double v = 0.0;
    const auto res = std::from_chars(text.data(), text.data() + text.size(), v);
    if (res.ec != std::errc() || res.ptr != text.data() + text.size())
        throw InvalidInput("not a number: '" + std::string(text) + "'");
    return v;
}

std::vector<std::string> split_csv_line(std::string_view line)
{
    std::vector<std::string> out;
    std::size_t start = 0;
    while (true)
    {
        const auto pos = line.find(',', start);
        out.emplace_back(line.substr(start, pos == std::string_view::npos ? std::string_view::npos : pos - start));
        if (pos == std::string_view::npos)
            break;
        start = pos + 1;
    }
    if (!out.empty() && !out.back().empty() && out.back().back() == '\r')
        out.back().pop_back();
    return out;
}

void write_grid_csv(const GridValues &grid, const std::filesystem::path &path)
{
    std::ofstream out(path);
    if (!out)
        throw InvalidInput("cannot write grid file " + path.string());
    out << "u,v,value\n";
    for (std::size_t i = 0; i < grid.grid.u.size(); ++i)
        for (std::size_t j = 0; j < grid.grid.v.size(); ++j)
            out << format_double(grid.grid.u[i]) << ',' << format_double(grid.grid.v[j]) << ','
                << format_double(grid.values(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j))) << '\n';
}

} // namespace macrb
