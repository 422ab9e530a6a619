#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace fluidmatch {

/// One ride request in planar coordinates (miles). Timestamps are seconds.
struct TripRecord {
  double origin_x = 0.0;
  double origin_y = 0.0;
  double dest_x = 0.0;
  double dest_y = 0.0;
  std::optional<double> timestamp;

  bool zero_length() const noexcept { return origin_x == dest_x && origin_y == dest_y; }
  friend bool operator==(const TripRecord&, const TripRecord&) = default;
};

/// Reads CSV with a header naming origin_x, origin_y, dest_x, dest_y and
/// optionally timestamp, in any order. Extra columns are ignored. Throws
/// ParseError with the 1-based line number on malformed input.
std::vector<TripRecord> read_trips_csv(std::istream& in);
std::vector<TripRecord> load_trips_csv(const std::string& path);

void write_trips_csv(std::ostream& out, const std::vector<TripRecord>& trips);
void save_trips_csv(const std::string& path, const std::vector<TripRecord>& trips);

/// Gaussian-mixture trip generator. Each hotspot is an origin centre and a
/// destination centre, both uniform on [0, extent]^2; each trip picks a hotspot
/// uniformly and adds isotropic normal noise with standard deviation `spread`
/// to both ends. Timestamps are
/// uniform over [0, hours * 3600) and the output is sorted by them.
struct SynthSpec {
  std::size_t trips = 1000;
  std::size_t hotspots = 5;
  double spread = 0.5;
  double extent = 20.0;
  double hours = 1.0;

  void validate() const;
};

std::vector<TripRecord> synth_trips(const SynthSpec& spec, std::uint64_t seed);

}  // namespace fluidmatch
