#pragma once

#include <cstdint>
#include <optional>
#include <ostream>
#include <string>

#include "orw/format.hpp"

namespace orw {

/// CSV cell that is either a number, left empty (not requested) or marked
/// `skipped` (above the node cap).
struct Cell {
    enum class State { Empty, Value, Skipped };
    State state = State::Empty;
    double value = 0.0;
    bool integral = false;

    static Cell of(double v) { return {State::Value, v, false}; }
    static Cell count(std::uint64_t v) { return {State::Value, static_cast<double>(v), true}; }
    static Cell skipped() { return {State::Skipped, 0.0, false}; }

    bool has_value() const { return state == State::Value; }

    std::string str() const {
        switch (state) {
            case State::Value:
                return integral ? std::to_string(static_cast<std::uint64_t>(value)) : format_double(value);
            case State::Skipped:
                return "skipped";
            case State::Empty:
                break;
        }
        return {};
    }
};

struct LatencyReport {
    std::string family;
    std::string params;  // `key=value` pairs joined by ';'
    double analytic = 0.0;
    double lower_bound = 0.0;
    double upper_bound = 0.0;
    Cell oracle;
    Cell mc_mean;
    Cell mc_ci;
    Cell trials;
};

inline constexpr const char* kReportCsvHeader = "family,params,analytic,lower,upper,oracle,mc_mean,mc_ci,trials";

inline void write_report_row(std::ostream& os, const LatencyReport& r) {
    os << r.family << ',' << r.params << ',' << format_double(r.analytic) << ',' << format_double(r.lower_bound)
       << ',' << format_double(r.upper_bound) << ',' << r.oracle.str() << ',' << r.mc_mean.str() << ','
       << r.mc_ci.str() << ',' << r.trials.str() << '\n';
}

}  // namespace orw
