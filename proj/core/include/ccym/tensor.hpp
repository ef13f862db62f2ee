#pragma once

#include <array>
#include <cstddef>
#include <initializer_list>
#include <string>
#include <vector>

#include "ccym/errors.hpp"

namespace ccym {

enum class Slot : char { Lower = 'l', Upper = 'u' };

// Rank-r tensor over an n-dimensional index space with components of type S
// (a matrix field, or a radial series of matrix fields). Components are stored
// row-major in the index tuple.
template <class S>
struct Tensor {
    int n = 0;
    std::vector<Slot> slots;
    std::vector<S> c;

    Tensor() = default;
    Tensor(int dim, std::vector<Slot> s) : n(dim), slots(std::move(s)) {
        std::size_t count = 1;
        for (std::size_t i = 0; i < slots.size(); ++i) count *= static_cast<std::size_t>(n);
        c.resize(count);
    }

    int rank() const { return static_cast<int>(slots.size()); }
    std::size_t size() const { return c.size(); }

    template <class... I>
    std::size_t flat(I... idx) const {
        static_assert(sizeof...(I) >= 1);
        std::size_t f = 0;
        ((f = f * static_cast<std::size_t>(n) + static_cast<std::size_t>(idx)), ...);
        return f;
    }
    template <class... I>
    S& operator()(I... idx) { return c[flat(idx...)]; }
    template <class... I>
    const S& operator()(I... idx) const { return c[flat(idx...)]; }

    // Digits of a flat index, most significant first.
    std::vector<int> digits(std::size_t f) const {
        std::vector<int> d(slots.size());
        for (int s = rank() - 1; s >= 0; --s) {
            d[s] = static_cast<int>(f % static_cast<std::size_t>(n));
            f /= static_cast<std::size_t>(n);
        }
        return d;
    }
    std::size_t flat_of(const std::vector<int>& d) const {
        std::size_t f = 0;
        for (int x : d) f = f * static_cast<std::size_t>(n) + static_cast<std::size_t>(x);
        return f;
    }
};

inline std::vector<Slot> lower_slots(int rank) { return std::vector<Slot>(rank, Slot::Lower); }

inline std::string slot_string(const std::vector<Slot>& s) {
    std::string r;
    for (Slot x : s) r.push_back(static_cast<char>(x));
    return r;
}

inline std::vector<Slot> parse_slots(const std::string& s) {
    std::vector<Slot> r;
    for (char ch : s) {
        if (ch == 'l') r.push_back(Slot::Lower);
        else if (ch == 'u') r.push_back(Slot::Upper);
        else throw ShapeError("slot string may only contain 'l' and 'u'");
    }
    return r;
}

}  // namespace ccym
