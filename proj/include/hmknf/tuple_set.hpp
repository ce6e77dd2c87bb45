#pragma once

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

namespace hmknf {

/// Deduplicating store of fixed-arity tuples of 32-bit ids, flat in memory.
/// Tuples keep their insertion index forever.
class TupleSet {
public:
    explicit TupleSet(std::size_t arity = 0) : arity_(arity) {}

    std::size_t arity() const { return arity_; }
    std::size_t size() const { return size_; }
    const std::uint32_t* tuple(std::size_t i) const { return data_.data() + i * arity_; }

    /// Index of the tuple and whether it was new.
    std::pair<std::uint32_t, bool> insert(const std::uint32_t* t);
    std::optional<std::uint32_t> find(const std::uint32_t* t) const;

    void reserve(std::size_t n);

private:
    static constexpr std::uint32_t kEmpty = 0xffffffffu;

    std::uint64_t hash(const std::uint32_t* t) const;
    bool equal(std::uint32_t index, const std::uint32_t* t) const;
    void grow();

    std::size_t arity_;
    std::size_t size_ = 0;
    std::vector<std::uint32_t> data_;
    std::vector<std::uint32_t> slots_;
};

}  // namespace hmknf
