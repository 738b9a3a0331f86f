#pragma once

#include <chrono>
#include <map>
#include <memory>
#include <mutex>
#include <string>

namespace revbench {

// Injectable clock so rate limiting is testable with virtual time.
class Clock {
public:
    using TimePoint = std::chrono::steady_clock::time_point;
    virtual ~Clock() = default;
    virtual TimePoint now() = 0;
    virtual void sleep_until(TimePoint t) = 0;
};

std::shared_ptr<Clock> system_clock();

// Minimum-interval limiter, one lane per source key, shared across worker
// threads: grants are spaced at least 1/requests_per_second apart per key.
class RateLimiter {
public:
    RateLimiter(double requests_per_second, std::shared_ptr<Clock> clock = system_clock());

    // Blocks until the named source may issue its next request.
    void acquire(const std::string& source);

private:
    std::chrono::nanoseconds interval_;
    std::shared_ptr<Clock> clock_;
    std::mutex mutex_;
    std::map<std::string, Clock::TimePoint> next_allowed_;
};

} // namespace revbench
