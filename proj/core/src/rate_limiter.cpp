#include "revbench/rate_limiter.hpp"

#include <thread>

namespace revbench {

namespace {

class SystemClock : public Clock {
public:
    TimePoint now() override { return std::chrono::steady_clock::now(); }
    void sleep_until(TimePoint t) override { std::this_thread::sleep_until(t); }
};

} // namespace

std::shared_ptr<Clock> system_clock() {
    static auto instance = std::make_shared<SystemClock>();
    return instance;
}

RateLimiter::RateLimiter(double requests_per_second, std::shared_ptr<Clock> clock)
    : clock_(std::move(clock)) {
    if (requests_per_second <= 0.0) {
        interval_ = std::chrono::nanoseconds::zero();
    } else {
        interval_ = std::chrono::nanoseconds(
            static_cast<std::int64_t>(1e9 / requests_per_second));
    }
}

void RateLimiter::acquire(const std::string& source) {
    if (interval_ == std::chrono::nanoseconds::zero()) return;
    Clock::TimePoint grant;
    {
        std::lock_guard<std::mutex> lock(mutex_);
        Clock::TimePoint now = clock_->now();
        auto it = next_allowed_.find(source);
        grant = (it == next_allowed_.end() || it->second < now) ? now : it->second;
        next_allowed_[source] = grant + interval_;
    }
    clock_->sleep_until(grant);
}

} // namespace revbench
