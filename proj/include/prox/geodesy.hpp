#ifndef PROX_GEODESY_HPP
#define PROX_GEODESY_HPP

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace prox::geodesy {

// Mean Earth radius, km.
inline constexpr double kEarthRadiusKm = 6371.0088;

struct GeoPoint {
    double lat; // degrees, [-90, 90]
    double lon; // degrees, [-180, 180]

    GeoPoint(double lat_deg, double lon_deg);
};

// Great-circle distance in km (haversine).
double haversine_km(const GeoPoint& a, const GeoPoint& b);

struct GazetteerColumns {
    std::string zip = "zip";
    std::string lat = "lat";
    std::string lon = "lon";
};

class ZipGazetteer {
public:
    void insert(const std::string& zip, GeoPoint point); // throws on conflicting duplicate
    std::optional<GeoPoint> lookup(const std::string& zip) const;
    std::size_t size() const { return entries_.size(); }
    const std::map<std::string, GeoPoint>& entries() const { return entries_; }

    std::string source;
    std::size_t malformed_rows = 0;

private:
    std::map<std::string, GeoPoint> entries_;
};

// CSV with a header row naming the zip/lat/lon columns. Malformed rows are
// counted on the result, not dropped silently. Throws on a missing file,
// zero valid rows, or a duplicate zip with conflicting coordinates.
ZipGazetteer load_gazetteer(const std::string& path, const GazetteerColumns& columns = {});

// 5-digit normalization: trims whitespace, strips a ZIP+4 suffix. Empty
// optional when the result is not exactly 5 digits.
std::optional<std::string> normalize_zip(const std::string& raw);

struct PairDistanceResult {
    std::vector<double> distances_km;
    std::size_t excluded = 0; // pairs with at least one unresolvable zip
};

// One distance per resolvable pair; zero-distance pairs are retained.
// Throws when no pair resolves.
PairDistanceResult pair_distances(const std::vector<std::pair<std::string, std::string>>& pairs,
                                  const ZipGazetteer& gazetteer);

} // namespace prox::geodesy

#endif
