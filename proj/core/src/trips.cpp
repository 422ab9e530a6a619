#include "fluidmatch/trips.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <ostream>
#include <random>
#include <sstream>
#include <string_view>

#include "fluidmatch/error.hpp"

namespace fluidmatch {

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
  return s;
}

std::vector<std::string_view> split(std::string_view line) {
  std::vector<std::string_view> cells;
  std::size_t start = 0;
  for (;;) {
    const std::size_t comma = line.find(',', start);
    cells.push_back(trim(line.substr(start, comma == std::string_view::npos ? std::string_view::npos : comma - start)));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return cells;
}

double parse_number(std::string_view cell, std::string_view column, std::size_t line) {
  double v = 0.0;
  const auto [end, ec] = std::from_chars(cell.data(), cell.data() + cell.size(), v);
  if (ec != std::errc() || end != cell.data() + cell.size() || cell.empty()) {
    throw ParseError("column " + std::string(column) + ": '" + std::string(cell) + "' is not a number", line);
  }
  if (!std::isfinite(v)) throw ParseError("column " + std::string(column) + " is not finite", line);
  return v;
}

std::string format_number(double v) {
  char buf[32];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

}  // namespace

std::vector<TripRecord> read_trips_csv(std::istream& in) {
  std::string line;
  std::size_t line_no = 0;
  bool have_header = false;
  while (!have_header && std::getline(in, line)) {
    ++line_no;
    have_header = !trim(line).empty();
  }
  if (!have_header) throw ParseError("trips file is empty", 0);

  const std::vector<std::string_view> header = split(line);
  std::vector<std::string> names(header.begin(), header.end());
  auto column = [&](std::string_view name) -> std::optional<std::size_t> {
    const auto it = std::find(names.begin(), names.end(), name);
    if (it == names.end()) return std::nullopt;
    return static_cast<std::size_t>(it - names.begin());
  };
  const char* required[] = {"origin_x", "origin_y", "dest_x", "dest_y"};
  std::size_t idx[4];
  for (int k = 0; k < 4; ++k) {
    const auto c = column(required[k]);
    if (!c) throw ParseError(std::string("missing column ") + required[k], line_no);
    idx[k] = *c;
  }
  const auto ts = column("timestamp");

  std::vector<TripRecord> trips;
  while (std::getline(in, line)) {
    ++line_no;
    if (trim(line).empty()) continue;
    const std::vector<std::string_view> cells = split(line);
    if (cells.size() != names.size()) {
      throw ParseError("expected " + std::to_string(names.size()) + " fields, found " + std::to_string(cells.size()),
                       line_no);
    }
    TripRecord t;
    t.origin_x = parse_number(cells[idx[0]], required[0], line_no);
    t.origin_y = parse_number(cells[idx[1]], required[1], line_no);
    t.dest_x = parse_number(cells[idx[2]], required[2], line_no);
    t.dest_y = parse_number(cells[idx[3]], required[3], line_no);
    if (ts && !cells[*ts].empty()) t.timestamp = parse_number(cells[*ts], "timestamp", line_no);
    trips.push_back(t);
  }
  if (trips.empty()) throw ParseError("trips file has a header but no records", line_no);
  return trips;
}

std::vector<TripRecord> load_trips_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ValidationError("cannot open trips file " + path);
  return read_trips_csv(in);
}

void write_trips_csv(std::ostream& out, const std::vector<TripRecord>& trips) {
  const bool stamped = std::any_of(trips.begin(), trips.end(), [](const TripRecord& t) { return t.timestamp; });
  out << "origin_x,origin_y,dest_x,dest_y" << (stamped ? ",timestamp" : "") << '\n';
  for (const auto& t : trips) {
    out << format_number(t.origin_x) << ',' << format_number(t.origin_y) << ',' << format_number(t.dest_x) << ','
        << format_number(t.dest_y);
    if (stamped) out << ',' << (t.timestamp ? format_number(*t.timestamp) : "");
    out << '\n';
  }
}

void save_trips_csv(const std::string& path, const std::vector<TripRecord>& trips) {
  std::ofstream out(path);
  if (!out) throw ValidationError("cannot write trips file " + path);
  write_trips_csv(out, trips);
}

void SynthSpec::validate() const {
  if (trips == 0) throw ValidationError("synthetic spec needs at least one trip");
  if (hotspots == 0) throw ValidationError("synthetic spec needs at least one hotspot");
  if (!(spread >= 0.0) || !std::isfinite(spread)) throw ValidationError("spread must be finite and >= 0");
  if (!(extent > 0.0) || !std::isfinite(extent)) throw ValidationError("extent must be finite and > 0");
  if (!(hours > 0.0) || !std::isfinite(hours)) throw ValidationError("hours must be finite and > 0");
}

std::vector<TripRecord> synth_trips(const SynthSpec& spec, std::uint64_t seed) {
  spec.validate();
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);

  // A hotspot is an origin centre paired with a destination centre.
  struct Corridor {
    double ox, oy, dx, dy;
  };
  std::vector<Corridor> corridors(spec.hotspots);
  for (auto& c : corridors) {
    c.ox = spec.extent * unit(rng);
    c.oy = spec.extent * unit(rng);
    c.dx = spec.extent * unit(rng);
    c.dy = spec.extent * unit(rng);
  }

  std::uniform_int_distribution<std::size_t> pick(0, spec.hotspots - 1);
  std::normal_distribution<double> noise(0.0, 1.0);
  std::vector<TripRecord> trips(spec.trips);
  for (auto& t : trips) {
    const Corridor& c = corridors[pick(rng)];
    t.origin_x = c.ox + spec.spread * noise(rng);
    t.origin_y = c.oy + spec.spread * noise(rng);
    t.dest_x = c.dx + spec.spread * noise(rng);
    t.dest_y = c.dy + spec.spread * noise(rng);
    t.timestamp = spec.hours * 3600.0 * unit(rng);
  }
  std::stable_sort(trips.begin(), trips.end(),
                   [](const TripRecord& a, const TripRecord& b) { return *a.timestamp < *b.timestamp; });
  return trips;
}

}  // namespace fluidmatch
