#include "nanosim/transport/msg_buffer.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

#include "nanosim/sim/engine.hpp"

namespace nanosim {

MsgBufferPool::MsgBufferPool(std::vector<SizeClass> classes) {
    std::sort(classes.begin(), classes.end(),
              [](const SizeClass& a, const SizeClass& b) { return a.buf_bytes < b.buf_bytes; });
    for (std::size_t i = 0; i < classes.size(); ++i) {
        if (classes[i].buf_bytes == 0) throw ConfigError("buffer size class of 0 bytes");
        if (i > 0 && classes[i].buf_bytes == classes[i - 1].buf_bytes) {
            throw ConfigError("duplicate buffer size class " + std::to_string(classes[i].buf_bytes));
        }
        ClassState st;
        st.cfg = classes[i];
        st.storage.resize(classes[i].count);
        st.in_use.assign(classes[i].count, false);
        // Lowest slot ids come off the stack first.
        for (std::uint32_t s = classes[i].count; s-- > 0;) st.free_list.push_back(s);
        classes_.push_back(std::move(st));
    }
}

std::vector<SizeClass> MsgBufferPool::default_classes() {
    return {{128, 256}, {1024, 256}, {8192, 256}};
}

std::optional<BufferHandle> MsgBufferPool::alloc(std::uint32_t msg_len) {
    if (msg_len == 0) throw std::invalid_argument("buffer allocation for an empty message");
    for (std::size_t i = 0; i < classes_.size(); ++i) {
        ClassState& c = classes_[i];
        if (c.cfg.buf_bytes < msg_len || c.free_list.empty()) continue;
        const std::uint32_t slot = c.free_list.back();
        c.free_list.pop_back();
        c.in_use[slot] = true;
        if (c.storage[slot].empty()) c.storage[slot].resize(c.cfg.buf_bytes);
        return BufferHandle{static_cast<std::uint32_t>(i), slot};
    }
    ++failures_;
    return std::nullopt;
}

void MsgBufferPool::free(BufferHandle h) {
    ClassState& c = classes_.at(h.size_class);
    if (h.slot >= c.in_use.size() || !c.in_use[h.slot]) {
        throw SimError("double free of message buffer class=" + std::to_string(h.size_class) +
                       " slot=" + std::to_string(h.slot));
    }
    c.in_use[h.slot] = false;
    c.free_list.push_back(h.slot);
}

std::span<std::uint8_t> MsgBufferPool::data(BufferHandle h) {
    return classes_.at(h.size_class).storage.at(h.slot);
}

std::span<const std::uint8_t> MsgBufferPool::data(BufferHandle h) const {
    return classes_.at(h.size_class).storage.at(h.slot);
}

bool MsgBufferPool::all_free() const {
    return std::all_of(classes_.begin(), classes_.end(),
                       [](const ClassState& c) { return c.free_list.size() == c.cfg.count; });
}

}  // namespace nanosim
