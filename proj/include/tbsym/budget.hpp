#pragma once

#include <chrono>
#include <optional>

#include "tbsym/errors.hpp"

namespace tbsym {

// Cooperative wall-clock budget. Long loops call check(), which throws
// TimeoutError once the deadline has passed.
class Budget {
public:
    using Clock = std::chrono::steady_clock;

    Budget() = default;
    explicit Budget(std::chrono::seconds limit) : deadline_(Clock::now() + limit) {}

    static Budget unlimited() { return {}; }

    bool limited() const { return deadline_.has_value(); }
    bool expired() const { return deadline_ && Clock::now() > *deadline_; }
    void check() const {
        if (expired()) throw TimeoutError();
    }

private:
    std::optional<Clock::time_point> deadline_;
};

}  // namespace tbsym
