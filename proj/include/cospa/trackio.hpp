#pragma once

#include "cospa/metrics.hpp"

#include <json.hpp>

#include <charconv>
#include <cstdint>
#include <istream>
#include <map>
#include <ostream>
#include <set>
#include <stdexcept>
#include <string>
#include <string_view>
#include <system_error>
#include <utility>
#include <vector>

namespace cospa {

enum class Format { csv, json };

inline Format parse_format(std::string_view s) {
    if (s == "csv") return Format::csv;
    if (s == "json") return Format::json;
    throw std::invalid_argument("unknown format '" + std::string(s) + "' (expected csv or json)");
}

class TrackIoError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Points at one instant with their track ids, in file order.
struct TrackFrame {
    PointSet points;
    std::vector<std::string> ids;
};

/// Time-indexed track sets. Only instants with at least one row exist.
struct TrackSeries {
    std::size_t dim = 0;  // 0 until known
    std::map<TimeIndex, TrackFrame> frames;

    [[nodiscard]] PointSeries points() const {
        PointSeries out;
        for (const auto& [t, f] : frames) out.emplace(t, f.points);
        return out;
    }

    /// Appends one record, enforcing the dimension and (time, id) uniqueness.
    void add(TimeIndex t, std::string id, Vector state) {
        if (dim == 0) dim = static_cast<std::size_t>(state.size());
        if (static_cast<std::size_t>(state.size()) != dim) {
            throw TrackIoError("state has " + std::to_string(state.size()) + " components, expected " +
                               std::to_string(dim));
        }
        auto it = frames.try_emplace(t, TrackFrame{PointSet(dim), {}}).first;
        for (const auto& existing : it->second.ids) {
            if (existing == id) throw TrackIoError("duplicate (t, id) = (" + std::to_string(t) + ", " + id + ")");
        }
        it->second.points.push_back(std::move(state));
        it->second.ids.push_back(std::move(id));
    }
};

inline TrackSeries make_track_series(const PointSeries& points,
                                     const std::map<TimeIndex, std::vector<std::string>>& ids) {
    TrackSeries out;
    for (const auto& [t, set] : points) {
        const auto found = ids.find(t);
        for (std::size_t i = 0; i < set.size(); ++i) {
            std::string id = found != ids.end() && i < found->second.size() ? found->second[i] : std::to_string(i);
            out.add(t, std::move(id), set[i]);
        }
    }
    return out;
}

namespace detail {

inline std::string_view trim(std::string_view s) {
    const auto first = s.find_first_not_of(" \t\r");
    if (first == std::string_view::npos) return {};
    const auto last = s.find_last_not_of(" \t\r");
    return s.substr(first, last - first + 1);
}

inline std::vector<std::string_view> split_commas(std::string_view line) {
    std::vector<std::string_view> out;
    std::size_t start = 0;
    while (true) {
        const auto pos = line.find(',', start);
        out.push_back(trim(line.substr(start, pos == std::string_view::npos ? pos : pos - start)));
        if (pos == std::string_view::npos) break;
        start = pos + 1;
    }
    return out;
}

// from_chars is locale independent.
inline bool parse_double(std::string_view s, double& out) {
    if (!s.empty() && s.front() == '+') s.remove_prefix(1);
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
    return ec == std::errc{} && ptr == s.data() + s.size() && !s.empty();
}

inline bool parse_int(std::string_view s, TimeIndex& out) {
    if (!s.empty() && s.front() == '+') s.remove_prefix(1);
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
    return ec == std::errc{} && ptr == s.data() + s.size() && !s.empty();
}

inline TrackIoError line_error(std::size_t line, const std::string& what) {
    return TrackIoError("line " + std::to_string(line) + ": " + what);
}

inline TrackSeries read_tracks_csv(std::istream& in) {
    TrackSeries series;
    std::string raw;
    std::size_t line_no = 0;
    std::size_t header_dim = 0;
    bool have_header = false;
    while (std::getline(in, raw)) {
        ++line_no;
        const std::string_view line = trim(raw);
        if (line.empty() || line.front() == '#') continue;
        const auto fields = split_commas(line);
        if (!have_header) {
            if (fields.size() < 3 || fields[0] != "t" || fields[1] != "id") {
                throw line_error(line_no, "expected header 't,id,x0,...'");
            }
            for (std::size_t k = 2; k < fields.size(); ++k) {
                if (fields[k] != "x" + std::to_string(k - 2)) {
                    throw line_error(line_no, "expected column 'x" + std::to_string(k - 2) + "', found '" +
                                                  std::string(fields[k]) + "'");
                }
            }
            header_dim = fields.size() - 2;
            have_header = true;
            continue;
        }
        if (fields.size() < 3) throw line_error(line_no, "row needs a time, an id and at least one state value");
        const std::size_t width = fields.size() - 2;
        const std::size_t expected = series.dim == 0 ? header_dim : series.dim;
        if (width != expected) {
            throw line_error(line_no, "row has " + std::to_string(width) + " state values, expected " +
                                          std::to_string(expected));
        }
        TimeIndex t = 0;
        if (!parse_int(fields[0], t)) throw line_error(line_no, "time '" + std::string(fields[0]) + "' is not an integer");
        if (fields[1].empty()) throw line_error(line_no, "empty id");
        Vector state(static_cast<Eigen::Index>(width));
        for (std::size_t k = 0; k < width; ++k) {
            double v = 0.0;
            if (!parse_double(fields[k + 2], v) || !std::isfinite(v)) {
                throw line_error(line_no, "state value '" + std::string(fields[k + 2]) + "' is not a finite number");
            }
            state[static_cast<Eigen::Index>(k)] = v;
        }
        try {
            series.add(t, std::string(fields[1]), std::move(state));
        } catch (const TrackIoError& e) {
            throw line_error(line_no, e.what());
        }
    }
    if (in.bad()) throw TrackIoError("failed reading track stream");
    if (series.dim == 0) series.dim = header_dim;
    return series;
}

inline TrackSeries read_tracks_json(std::istream& in) {
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(in);
    } catch (const nlohmann::json::exception& e) {
        throw TrackIoError(std::string("malformed JSON: ") + e.what());
    }
    if (!doc.is_array()) throw TrackIoError("expected a JSON array of track records");
    TrackSeries series;
    std::size_t index = 0;
    for (const auto& rec : doc) {
        auto fail = [&](const std::string& what) {
            return TrackIoError("record " + std::to_string(index) + ": " + what);
        };
        if (!rec.is_object()) throw fail("not an object");
        if (!rec.contains("t") || !rec["t"].is_number_integer()) throw fail("'t' must be an integer");
        if (!rec.contains("id")) throw fail("missing 'id'");
        std::string id = rec["id"].is_string() ? rec["id"].get<std::string>() : rec["id"].dump();
        std::size_t width = 0;
        while (rec.contains("x" + std::to_string(width))) ++width;
        if (width == 0) throw fail("no state fields x0, x1, ...");
        if (rec.size() != width + 2) throw fail("unexpected fields beside t, id, x0..x" + std::to_string(width - 1));
        Vector state(static_cast<Eigen::Index>(width));
        for (std::size_t k = 0; k < width; ++k) {
            const auto& v = rec["x" + std::to_string(k)];
            if (!v.is_number()) throw fail("x" + std::to_string(k) + " is not a number");
            state[static_cast<Eigen::Index>(k)] = v.get<double>();
        }
        try {
            series.add(rec["t"].get<TimeIndex>(), std::move(id), std::move(state));
        } catch (const TrackIoError& e) {
            throw fail(e.what());
        }
        ++index;
    }
    return series;
}

}  // namespace detail

/// Parses a track file. CSV: header `t,id,x0,...,x{d-1}`, `#` comment lines,
/// LF or CRLF. JSON: array of objects with the same field names.
inline TrackSeries read_tracks(std::istream& in, Format format) {
    return format == Format::csv ? detail::read_tracks_csv(in) : detail::read_tracks_json(in);
}

inline void write_tracks(const TrackSeries& series, std::ostream& out, Format format) {
    if (format == Format::json) {
        nlohmann::json doc = nlohmann::json::array();
        for (const auto& [t, frame] : series.frames) {
            for (std::size_t i = 0; i < frame.ids.size(); ++i) {
                nlohmann::json rec;
                rec["t"] = t;
                rec["id"] = frame.ids[i];
                for (Eigen::Index k = 0; k < frame.points[i].size(); ++k) rec["x" + std::to_string(k)] = frame.points[i][k];
                doc.push_back(std::move(rec));
            }
        }
        out << doc.dump(1) << '\n';
    } else {
        out << "t,id";
        for (std::size_t k = 0; k < std::max<std::size_t>(series.dim, 1); ++k) out << ",x" << k;
        out << '\n';
        for (const auto& [t, frame] : series.frames) {
            for (std::size_t i = 0; i < frame.ids.size(); ++i) {
                out << t << ',' << frame.ids[i];
                for (Eigen::Index k = 0; k < frame.points[i].size(); ++k) out << ',' << detail::format_double(frame.points[i][k]);
                out << '\n';
            }
        }
    }
    out.flush();
    if (!out) throw TrackIoError("failed writing track stream");
}

inline constexpr std::array<std::string_view, 12> kResultColumns{
    "time",        "metric",   "total", "localization", "outline",   "cardinality",
    "n_truth",     "n_est",    "n_correct", "n_outline", "n_missing", "n_false"};

/// One row per (time, metric) in time order, metrics in ospa, gospa, cospa order.
inline void write_results(const std::vector<StepEvaluation>& steps, std::ostream& out, Format format) {
    if (format == Format::json) {
        nlohmann::json doc = nlohmann::json::array();
        for (const auto& s : steps) {
            for (const auto& [metric, r] : s.results) {
                doc.push_back({{"time", s.time},
                               {"metric", std::string(to_string(metric))},
                               {"total", r.total},
                               {"localization", r.localization},
                               {"outline", r.outline},
                               {"cardinality", r.cardinality},
                               {"n_truth", s.n_truth},
                               {"n_est", s.n_estimate},
                               {"n_correct", s.associations.correct_pairs.size()},
                               {"n_outline", s.associations.outline_pairs.size()},
                               {"n_missing", s.associations.missing.size()},
                               {"n_false", s.associations.false_targets.size()}});
            }
        }
        out << doc.dump(1) << '\n';
    } else {
        for (std::size_t k = 0; k < kResultColumns.size(); ++k) out << (k ? "," : "") << kResultColumns[k];
        out << '\n';
        for (const auto& s : steps) {
            const auto& a = s.associations;
            for (const auto& [metric, r] : s.results) {
                out << s.time << ',' << to_string(metric) << ',' << detail::format_double(r.total) << ','
                    << detail::format_double(r.localization) << ',' << detail::format_double(r.outline) << ','
                    << detail::format_double(r.cardinality) << ',' << s.n_truth << ',' << s.n_estimate << ','
                    << a.correct_pairs.size() << ',' << a.outline_pairs.size() << ',' << a.missing.size() << ','
                    << a.false_targets.size() << '\n';
            }
        }
    }
    out.flush();
    if (!out) throw TrackIoError("failed writing results stream");
}

}  // namespace cospa
