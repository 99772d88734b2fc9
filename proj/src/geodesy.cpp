#include "prox/geodesy.hpp"

#include "prox/csv.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <fstream>
#include <stdexcept>

namespace prox::geodesy {

GeoPoint::GeoPoint(double lat_deg, double lon_deg) : lat(lat_deg), lon(lon_deg) {
    if (!(lat >= -90.0 && lat <= 90.0))
        throw std::invalid_argument("GeoPoint: latitude outside [-90, 90]");
    if (!(lon >= -180.0 && lon <= 180.0))
        throw std::invalid_argument("GeoPoint: longitude outside [-180, 180]");
}

double haversine_km(const GeoPoint& a, const GeoPoint& b) {
    constexpr double kDegToRad = M_PI / 180.0;
    const double lat1 = a.lat * kDegToRad;
    const double lat2 = b.lat * kDegToRad;
    const double dlat = (b.lat - a.lat) * kDegToRad;
    const double dlon = (b.lon - a.lon) * kDegToRad;

    const double sl = std::sin(dlat / 2.0);
    const double sg = std::sin(dlon / 2.0);
    const double h = sl * sl + std::cos(lat1) * std::cos(lat2) * sg * sg;
    return 2.0 * kEarthRadiusKm * std::asin(std::min(1.0, std::sqrt(h)));
}

std::optional<std::string> normalize_zip(const std::string& raw) {
    std::string z = csv::trim(raw);
    if (auto dash = z.find('-'); dash != std::string::npos)
        z.erase(dash);
    if (z.size() != 5) return std::nullopt;
    for (char c : z)
        if (!std::isdigit(static_cast<unsigned char>(c))) return std::nullopt;
    return z;
}

void ZipGazetteer::insert(const std::string& zip, GeoPoint point) {
    auto [it, inserted] = entries_.emplace(zip, point);
    if (!inserted) {
        if (it->second.lat != point.lat || it->second.lon != point.lon)
            throw std::runtime_error("gazetteer: duplicate zip " + zip +
                                     " with conflicting coordinates");
        // exact duplicate row: harmless
    }
}

std::optional<GeoPoint> ZipGazetteer::lookup(const std::string& zip) const {
    auto norm = normalize_zip(zip);
    if (!norm) return std::nullopt;
    auto it = entries_.find(*norm);
    if (it == entries_.end()) return std::nullopt;
    return it->second;
}

ZipGazetteer load_gazetteer(const std::string& path, const GazetteerColumns& columns) {
    std::ifstream in(path);
    if (!in)
        throw std::runtime_error("gazetteer: cannot open " + path);

    std::string header;
    if (!std::getline(in, header))
        throw std::runtime_error("gazetteer: zero valid rows in " + path);

    const auto names = csv::split_line(header);
    auto column_of = [&](const std::string& want) {
        for (std::size_t i = 0; i < names.size(); ++i)
            if (names[i] == want) return i;
        throw std::runtime_error("gazetteer: missing column '" + want + "' in " + path);
    };
    const std::size_t zip_col = column_of(columns.zip);
    const std::size_t lat_col = column_of(columns.lat);
    const std::size_t lon_col = column_of(columns.lon);
    const std::size_t min_fields = std::max({zip_col, lat_col, lon_col}) + 1;

    ZipGazetteer gaz;
    gaz.source = path;
    std::string line;
    while (std::getline(in, line)) {
        if (csv::trim(line).empty()) continue;
        const auto fields = csv::split_line(line);
        if (fields.size() < min_fields) {
            ++gaz.malformed_rows;
            continue;
        }
        auto zip = normalize_zip(fields[zip_col]);
        if (!zip) {
            ++gaz.malformed_rows;
            continue;
        }
        try {
            std::size_t used = 0;
            const double lat = std::stod(fields[lat_col], &used);
            if (used != fields[lat_col].size()) throw std::invalid_argument("lat");
            const double lon = std::stod(fields[lon_col], &used);
            if (used != fields[lon_col].size()) throw std::invalid_argument("lon");
            gaz.insert(*zip, GeoPoint(lat, lon));
        } catch (const std::runtime_error&) {
            throw; // conflicting duplicate
        } catch (const std::exception&) {
            ++gaz.malformed_rows;
        }
    }
    if (gaz.size() == 0)
        throw std::runtime_error("gazetteer: zero valid rows in " + path);
    return gaz;
}

PairDistanceResult pair_distances(const std::vector<std::pair<std::string, std::string>>& pairs,
                                  const ZipGazetteer& gazetteer) {
    PairDistanceResult result;
    result.distances_km.reserve(pairs.size());
    for (const auto& [za, zb] : pairs) {
        auto a = gazetteer.lookup(za);
        auto b = gazetteer.lookup(zb);
        if (!a || !b) {
            ++result.excluded;
            continue;
        }
        result.distances_km.push_back(haversine_km(*a, *b));
    }
    if (result.distances_km.empty() && !pairs.empty())
        throw std::runtime_error("pair_distances: no pair resolved against the gazetteer");
    return result;
}

} // namespace prox::geodesy
