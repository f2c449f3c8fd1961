#pragma once

#include <array>
#include <chrono>
#include <string>

namespace fdfsi {

enum class TimerCategory { InsSolver = 0, LevelSetUpdate = 1, FsiCorrection = 2, Other = 3 };

inline const char* timer_category_name(TimerCategory c) {
    switch (c) {
        case TimerCategory::InsSolver: return "INS Solver";
        case TimerCategory::LevelSetUpdate: return "Level Set Update";
        case TimerCategory::FsiCorrection: return "FSI Correction";
        default: return "Other";
    }
}

struct TimingReport {
    std::array<double, 4> seconds{};    // INS, Level Set, FSI, Other
    std::array<double, 4> fractions{};  // sum to 1 when total > 0
    double total = 0.0;
    bool enabled = false;
};

/// Wall-clock accumulation into the paper-style cost categories. "Other" is
/// whatever part of the total is not claimed by a named scope.
class CategoryTimers {
  public:
    explicit CategoryTimers(bool enabled = true) : enabled_(enabled) {}

    class Scope {
      public:
        Scope(CategoryTimers& t, TimerCategory c) : t_(t), c_(c) {
            if (t_.enabled_) t0_ = std::chrono::steady_clock::now();
        }
        ~Scope() {
            if (t_.enabled_)
                t_.named_[static_cast<int>(c_)] +=
                    std::chrono::duration<double>(std::chrono::steady_clock::now() - t0_).count();
        }
        Scope(const Scope&) = delete;
        Scope& operator=(const Scope&) = delete;

      private:
        CategoryTimers& t_;
        TimerCategory c_;
        std::chrono::steady_clock::time_point t0_;
    };

    class TotalScope {
      public:
        explicit TotalScope(CategoryTimers& t) : t_(t) {
            if (t_.enabled_) t0_ = std::chrono::steady_clock::now();
        }
        ~TotalScope() {
            if (t_.enabled_)
                t_.total_ +=
                    std::chrono::duration<double>(std::chrono::steady_clock::now() - t0_).count();
        }
        TotalScope(const TotalScope&) = delete;
        TotalScope& operator=(const TotalScope&) = delete;

      private:
        CategoryTimers& t_;
        std::chrono::steady_clock::time_point t0_;
    };

    Scope scope(TimerCategory c) { return Scope(*this, c); }
    TotalScope total_scope() { return TotalScope(*this); }
    bool enabled() const { return enabled_; }

    TimingReport report() const {
        TimingReport r;
        r.enabled = enabled_;
        if (!enabled_ || total_ <= 0.0) return r;
        r.total = total_;
        double named = 0.0;
        for (int c = 0; c < 3; ++c) {
            r.seconds[c] = named_[c];
            named += named_[c];
        }
        r.seconds[3] = std::max(0.0, total_ - named);
        for (int c = 0; c < 4; ++c) r.fractions[c] = r.seconds[c] / r.total;
        return r;
    }

  private:
    bool enabled_ = true;
    std::array<double, 4> named_{};  // indices 0..2 used; 3 derived
    double total_ = 0.0;
};

std::string format_timing_report(const TimingReport& r);

}  // namespace fdfsi
