#include "hmknf/tuple_set.hpp"

#include <algorithm>

namespace hmknf {

std::uint64_t TupleSet::hash(const std::uint32_t* t) const {
    std::uint64_t h = 0x9e3779b97f4a7c15ull;
    for (std::size_t i = 0; i < arity_; ++i) {
        h ^= t[i] + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
        h *= 0xff51afd7ed558ccdull;
    }
    return h ^ (h >> 29);
}

bool TupleSet::equal(std::uint32_t index, const std::uint32_t* t) const {
    return std::equal(t, t + arity_, tuple(index));
}

void TupleSet::grow() {
    std::size_t cap = slots_.empty() ? 16 : slots_.size() * 2;
    slots_.assign(cap, kEmpty);
    const std::size_t mask = cap - 1;
    for (std::uint32_t i = 0; i < size_; ++i) {
        std::size_t s = hash(tuple(i)) & mask;
        while (slots_[s] != kEmpty) s = (s + 1) & mask;
        slots_[s] = i;
    }
}

void TupleSet::reserve(std::size_t n) {
    data_.reserve(n * arity_);
    while (slots_.size() < 2 * n) grow();
}

std::pair<std::uint32_t, bool> TupleSet::insert(const std::uint32_t* t) {
    if (2 * (size_ + 1) > slots_.size()) grow();
    const std::size_t mask = slots_.size() - 1;
    std::size_t s = hash(t) & mask;
    while (slots_[s] != kEmpty) {
        if (equal(slots_[s], t)) return {slots_[s], false};
        s = (s + 1) & mask;
    }
    auto index = static_cast<std::uint32_t>(size_++);
    slots_[s] = index;
    data_.insert(data_.end(), t, t + arity_);
    return {index, true};
}

std::optional<std::uint32_t> TupleSet::find(const std::uint32_t* t) const {
    if (slots_.empty()) return std::nullopt;
    const std::size_t mask = slots_.size() - 1;
    std::size_t s = hash(t) & mask;
    while (slots_[s] != kEmpty) {
        if (equal(slots_[s], t)) return slots_[s];
        s = (s + 1) & mask;
    }
    return std::nullopt;
}

}  // namespace hmknf
