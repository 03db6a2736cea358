// Copyright 2026 The cfforge Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <compare>
#include <cstdint>
#include <iosfwd>
#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include <gmpxx.h>

namespace cfforge {

/// Exact rational number in lowest terms with a positive denominator.
///
/// Values whose numerator and denominator fit in int64 are stored inline;
/// anything larger is promoted to a GMP rational. The representation is
/// canonical (a big value never fits the inline form), so structural
/// equality is value equality.
class Rat {
public:
    Rat() = default;
    Rat(std::int64_t n) : num_(n) {}  // NOLINT(google-explicit-constructor)
    Rat(std::int64_t n, std::int64_t d);
    explicit Rat(const mpq_class& q);

    /// Parses "p/q" or "p". Throws std::invalid_argument on a zero
    /// denominator or malformed text.
    static Rat parse(std::string_view text);

    /// Reduced "p/q" form; integers are written with "/1".
    std::string str() const;

    bool is_small() const { return big_ == nullptr; }
    bool is_integer() const;
    int sign() const;
    Rat abs() const { return sign() < 0 ? -*this : *this; }
    /// Largest integer not exceeding the value.
    Rat floor() const;
    double to_double() const;
    mpq_class to_mpq() const;
    /// Integer value as int64; throws std::overflow_error when not representable.
    std::int64_t to_int64() const;

    Rat operator-() const;
    friend Rat operator+(const Rat& a, const Rat& b);
    friend Rat operator-(const Rat& a, const Rat& b);
    friend Rat operator*(const Rat& a, const Rat& b);
    friend Rat operator/(const Rat& a, const Rat& b);
    Rat& operator+=(const Rat& o) { return *this = *this + o; }
    Rat& operator-=(const Rat& o) { return *this = *this - o; }
    Rat& operator*=(const Rat& o) { return *this = *this * o; }
    Rat& operator/=(const Rat& o) { return *this = *this / o; }

    friend bool operator==(const Rat& a, const Rat& b);
    friend std::strong_ordering operator<=>(const Rat& a, const Rat& b);

    std::size_t hash() const;

private:
    static Rat from_i128(__int128 n, __int128 d);
    static Rat normalize(mpq_class q);

    std::int64_t num_ = 0;
    std::int64_t den_ = 1;
    std::shared_ptr<const mpq_class> big_;
};

std::ostream& operator<<(std::ostream& os, const Rat& r);

using Vec = std::vector<Rat>;

/// Componentwise helpers for rational vectors.
Vec operator+(const Vec& a, const Vec& b);
Vec operator-(const Vec& a, const Vec& b);
Vec scale_vec(const Vec& v, const Rat& k);
/// Max-norm, max_i |v_i|.
Rat max_norm(const Vec& v);
std::string to_string(const Vec& v);
/// Parses a comma-separated list of rationals, e.g. "1/2,3".
Vec parse_vec(std::string_view text);

}  // namespace cfforge

template <>
struct std::hash<cfforge::Rat> {
    std::size_t operator()(const cfforge::Rat& r) const noexcept { return r.hash(); }
};
