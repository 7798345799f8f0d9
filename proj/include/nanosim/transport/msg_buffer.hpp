#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

namespace nanosim {

struct SizeClass {
    std::uint32_t buf_bytes = 0;
    std::uint32_t count = 0;
};

struct BufferHandle {
    std::uint32_t size_class = 0;
    std::uint32_t slot = 0;
};

/// Fixed-size message buffers in several size classes, each with its own
/// free list. A packet's position in a buffer is base + index * mtu.
class MsgBufferPool {
public:
    explicit MsgBufferPool(std::vector<SizeClass> classes);

    /// 128B, 1KB and 8KB classes with 256 buffers each.
    static std::vector<SizeClass> default_classes();

    /// Smallest class that can hold msg_len and still has a free buffer.
    std::optional<BufferHandle> alloc(std::uint32_t msg_len);
    void free(BufferHandle h);

    std::span<std::uint8_t> data(BufferHandle h);
    std::span<const std::uint8_t> data(BufferHandle h) const;

    std::size_t num_classes() const { return classes_.size(); }
    const SizeClass& size_class(std::size_t i) const { return classes_.at(i).cfg; }
    std::uint32_t free_count(std::size_t i) const {
        return static_cast<std::uint32_t>(classes_.at(i).free_list.size());
    }
    std::uint32_t largest() const { return classes_.empty() ? 0 : classes_.back().cfg.buf_bytes; }
    bool all_free() const;
    std::uint64_t alloc_failures() const { return failures_; }

private:
    struct ClassState {
        SizeClass cfg;
        std::vector<std::uint32_t> free_list;  // stack of slot ids
        std::vector<std::vector<std::uint8_t>> storage;
        std::vector<bool> in_use;
    };
    std::vector<ClassState> classes_;
    std::uint64_t failures_ = 0;
};

}  // namespace nanosim
