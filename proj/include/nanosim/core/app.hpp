#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "nanosim/transport/app_header.hpp"

namespace nanosim {

struct AppContext {
    SimTime now;
    HostId host = 0;
    std::size_t core = 0;
    Port port = 0;
};

/// Application running on one hardware thread.
class App {
public:
    virtual ~App() = default;
    virtual std::string name() const = 0;
    /// On-core processing time for `msg`; must be called once per message.
    virtual SimTime service_time(const Message& msg, const AppContext& ctx) = 0;
    /// Messages to transmit once processing of `msg` finishes.
    virtual std::vector<Message> on_complete(Message msg, const AppContext& ctx) = 0;
};

}  // namespace nanosim
