#pragma once

#include <algorithm>
#include <cstddef>
#include <functional>
#include <numeric>
#include <span>
#include <stdexcept>
#include <utility>
#include <vector>

namespace latsq {

namespace detail {

// Number of cycles of the map i -> images[i-1] on {1..n}.  `seen` is reused
// scratch; it is resized and cleared here.
inline int cycle_count(std::span<const int> images, std::vector<char>& seen)
{
    const int n = static_cast<int>(images.size());
    seen.assign(static_cast<std::size_t>(n), 0);
    int cycles = 0;
    for (int i = 0; i < n; ++i) {
        if (seen[i]) continue;
        ++cycles;
        for (int j = i; !seen[j]; j = images[j] - 1) seen[j] = 1;
    }
    return cycles;
}

inline int sign(std::span<const int> images, std::vector<char>& seen)
{
    return (static_cast<int>(images.size()) - cycle_count(images, seen)) & 1;
}

} // namespace detail

/// Permutation of {1..n} stored as its image table: images()[i-1] is the
/// image of i.
class Permutation {
public:
    Permutation() = default;

    explicit Permutation(std::vector<int> images) : images_(std::move(images))
    {
        const int n = size();
        std::vector<char> seen(static_cast<std::size_t>(n), 0);
        for (int v : images_) {
            if (v < 1 || v > n || seen[v - 1])
                throw std::invalid_argument("permutation: images are not a bijection on 1..n");
            seen[v - 1] = 1;
        }
    }

    static Permutation identity(int n)
    {
        Permutation p;
        p.images_.resize(static_cast<std::size_t>(n));
        std::iota(p.images_.begin(), p.images_.end(), 1);
        return p;
    }

    int size() const { return static_cast<int>(images_.size()); }

    /// Image of i, 1 <= i <= n.
    int operator()(int i) const
    {
        if (i < 1 || i > size()) throw std::out_of_range("permutation: index out of range");
        return images_[i - 1];
    }

    const std::vector<int>& images() const { return images_; }

    Permutation inverse() const
    {
        Permutation p;
        p.images_.resize(images_.size());
        for (int i = 0; i < size(); ++i) p.images_[images_[i] - 1] = i + 1;
        return p;
    }

    bool operator==(const Permutation&) const = default;

private:
    std::vector<int> images_;
};

/// (p after q): i -> p(q(i)).
inline Permutation compose(const Permutation& p, const Permutation& q)
{
    if (p.size() != q.size())
        throw std::invalid_argument("compose: mismatched degrees");
    std::vector<int> img(p.images().size());
    for (int i = 1; i <= q.size(); ++i) img[i - 1] = p(q(i));
    return Permutation(std::move(img));
}

inline int cycle_count(std::span<const int> images)
{
    std::vector<char> seen;
    return detail::cycle_count(images, seen);
}

inline int cycle_count(const Permutation& p) { return cycle_count(std::span<const int>(p.images())); }

/// Parity of a permutation given by its image table: 0 even, 1 odd.
/// Computed as (n - number of cycles) mod 2.
inline int sign(std::span<const int> images)
{
    std::vector<char> seen;
    return detail::sign(images, seen);
}

inline int sign(const Permutation& p) { return sign(std::span<const int>(p.images())); }

/// Cycle lengths, largest first.
inline std::vector<int> cycle_lengths(std::span<const int> images)
{
    const int n = static_cast<int>(images.size());
    std::vector<char> seen(static_cast<std::size_t>(n), 0);
    std::vector<int> out;
    for (int i = 0; i < n; ++i) {
        if (seen[i]) continue;
        int len = 0;
        for (int j = i; !seen[j]; j = images[j] - 1) {
            seen[j] = 1;
            ++len;
        }
        out.push_back(len);
    }
    std::sort(out.begin(), out.end(), std::greater<int>());
    return out;
}

} // namespace latsq
