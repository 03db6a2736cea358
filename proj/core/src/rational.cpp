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

#include "cfforge/rational.hpp"

#include <charconv>
#include <limits>
#include <ostream>
#include <stdexcept>

namespace cfforge {
namespace {

using i128 = __int128;

constexpr i128 kMax64 = std::numeric_limits<std::int64_t>::max();
constexpr i128 kMin64 = std::numeric_limits<std::int64_t>::min();

i128 gcd128(i128 a, i128 b) {
    if (a < 0) a = -a;
    if (b < 0) b = -b;
    while (b != 0) {
        i128 t = a % b;
        a = b;
        b = t;
    }
    return a;
}

bool fits64(i128 v) { return v >= kMin64 && v <= kMax64; }

mpz_class to_mpz(i128 v) {
    bool neg = v < 0;
    unsigned __int128 u = neg ? static_cast<unsigned __int128>(-(v + 1)) + 1
                              : static_cast<unsigned __int128>(v);
    mpz_class hi(static_cast<unsigned long>(static_cast<std::uint64_t>(u >> 64)));
    mpz_class lo(static_cast<unsigned long>(static_cast<std::uint64_t>(u)));
    mpz_class r = (hi << 64) + lo;
    return neg ? mpz_class(-r) : r;
}

bool valid_digits(std::string_view s, bool allow_sign) {
    if (s.empty()) return false;
    std::size_t i = 0;
    if (allow_sign && (s[0] == '-' || s[0] == '+')) i = 1;
    if (i == s.size()) return false;
    for (; i < s.size(); ++i) {
        if (s[i] < '0' || s[i] > '9') return false;
    }
    return true;
}

}  // namespace

Rat::Rat(std::int64_t n, std::int64_t d) {
    if (d == 0) throw std::invalid_argument("rational with zero denominator");
    *this = from_i128(n, d);
}

Rat::Rat(const mpq_class& q) { *this = normalize(q); }

Rat Rat::from_i128(i128 n, i128 d) {
    if (d < 0) {
        n = -n;
        d = -d;
    }
    i128 g = gcd128(n, d);
    if (g > 1) {
        n /= g;
        d /= g;
    }
    Rat r;
    if (fits64(n) && fits64(d)) {
        r.num_ = static_cast<std::int64_t>(n);
        r.den_ = static_cast<std::int64_t>(d);
        return r;
    }
    mpq_class q(to_mpz(n), to_mpz(d));
    r.big_ = std::make_shared<const mpq_class>(std::move(q));
    return r;
}

Rat Rat::normalize(mpq_class q) {
    q.canonicalize();
    Rat r;
    const mpz_class& n = q.get_num();
    const mpz_class& d = q.get_den();
    if (n.fits_slong_p() && d.fits_slong_p()) {
        r.num_ = n.get_si();
        r.den_ = d.get_si();
        return r;
    }
    r.big_ = std::make_shared<const mpq_class>(std::move(q));
    return r;
}

mpq_class Rat::to_mpq() const {
    if (big_) return *big_;
    return mpq_class(mpz_class(static_cast<long>(num_)), mpz_class(static_cast<long>(den_)));
}

Rat Rat::parse(std::string_view text) {
    while (!text.empty() && text.front() == ' ') text.remove_prefix(1);
    while (!text.empty() && text.back() == ' ') text.remove_suffix(1);
    auto slash = text.find('/');
    std::string_view num = text.substr(0, slash);
    std::string_view den = slash == std::string_view::npos ? std::string_view("1") : text.substr(slash + 1);
    if (!valid_digits(num, true) || !valid_digits(den, false)) {
        throw std::invalid_argument("malformed rational \"" + std::string(text) + "\"");
    }
    std::string ns(num);
    if (!ns.empty() && ns[0] == '+') ns.erase(0, 1);
    mpz_class n(ns, 10);
    mpz_class d(std::string(den), 10);
    if (d == 0) throw std::invalid_argument("rational with zero denominator \"" + std::string(text) + "\"");
    return normalize(mpq_class(n, d));
}

std::string Rat::str() const {
    if (big_) {
        return big_->get_num().get_str() + "/" + big_->get_den().get_str();
    }
    return std::to_string(num_) + "/" + std::to_string(den_);
}

bool Rat::is_integer() const { return big_ ? big_->get_den() == 1 : den_ == 1; }

int Rat::sign() const {
    if (big_) return sgn(*big_);
    return (num_ > 0) - (num_ < 0);
}

Rat Rat::floor() const {
    if (big_) {
        mpz_class f;
        mpz_fdiv_q(f.get_mpz_t(), big_->get_num_mpz_t(), big_->get_den_mpz_t());
        return normalize(mpq_class(f));
    }
    std::int64_t q = num_ / den_;
    if (num_ % den_ != 0 && num_ < 0) --q;
    return Rat(q);
}

double Rat::to_double() const {
    if (big_) return big_->get_d();
    return static_cast<double>(num_) / static_cast<double>(den_);
}

std::int64_t Rat::to_int64() const {
    if (!is_integer() || big_) throw std::overflow_error("rational " + str() + " is not an int64 integer");
    return num_;
}

Rat Rat::operator-() const {
    if (!big_ && num_ != std::numeric_limits<std::int64_t>::min()) {
        Rat r;
        r.num_ = -num_;
        r.den_ = den_;
        return r;
    }
    return normalize(-to_mpq());
}

Rat operator+(const Rat& a, const Rat& b) {
    if (!a.big_ && !b.big_) {
        if (a.den_ == b.den_) {
            return Rat::from_i128(static_cast<i128>(a.num_) + b.num_, a.den_);
        }
        return Rat::from_i128(static_cast<i128>(a.num_) * b.den_ + static_cast<i128>(b.num_) * a.den_,
                              static_cast<i128>(a.den_) * b.den_);
    }
    return Rat::normalize(a.to_mpq() + b.to_mpq());
}

Rat operator-(const Rat& a, const Rat& b) {
    if (!a.big_ && !b.big_) {
        if (a.den_ == b.den_) {
            return Rat::from_i128(static_cast<i128>(a.num_) - b.num_, a.den_);
        }
        return Rat::from_i128(static_cast<i128>(a.num_) * b.den_ - static_cast<i128>(b.num_) * a.den_,
                              static_cast<i128>(a.den_) * b.den_);
    }
    return Rat::normalize(a.to_mpq() - b.to_mpq());
}

Rat operator*(const Rat& a, const Rat& b) {
    if (!a.big_ && !b.big_) {
        return Rat::from_i128(static_cast<i128>(a.num_) * b.num_, static_cast<i128>(a.den_) * b.den_);
    }
    return Rat::normalize(a.to_mpq() * b.to_mpq());
}

Rat operator/(const Rat& a, const Rat& b) {
    if (b.sign() == 0) throw std::domain_error("division by zero rational");
    if (!a.big_ && !b.big_) {
        return Rat::from_i128(static_cast<i128>(a.num_) * b.den_, static_cast<i128>(a.den_) * b.num_);
    }
    return Rat::normalize(a.to_mpq() / b.to_mpq());
}

bool operator==(const Rat& a, const Rat& b) {
    if (!a.big_ && !b.big_) return a.num_ == b.num_ && a.den_ == b.den_;
    if (a.big_ && b.big_) return *a.big_ == *b.big_;
    return false;
}

std::strong_ordering operator<=>(const Rat& a, const Rat& b) {
    if (!a.big_ && !b.big_) {
        if (a.den_ == b.den_) return a.num_ <=> b.num_;
        i128 l = static_cast<i128>(a.num_) * b.den_;
        i128 r = static_cast<i128>(b.num_) * a.den_;
        return l < r ? std::strong_ordering::less
                     : (l > r ? std::strong_ordering::greater : std::strong_ordering::equal);
    }
    int c = cmp(a.to_mpq(), b.to_mpq());
    return c < 0 ? std::strong_ordering::less : (c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
}

std::size_t Rat::hash() const {
    if (big_) return std::hash<std::string>{}(str());
    std::uint64_t h = static_cast<std::uint64_t>(num_) * 0x9E3779B97F4A7C15ULL;
    h ^= static_cast<std::uint64_t>(den_) + 0x7F4A7C159E3779B9ULL + (h << 6) + (h >> 2);
    return static_cast<std::size_t>(h);
}

std::ostream& operator<<(std::ostream& os, const Rat& r) { return os << r.str(); }

Vec operator+(const Vec& a, const Vec& b) {
    if (a.size() != b.size()) throw std::invalid_argument("vector dimension mismatch");
    Vec r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] + b[i];
    return r;
}

Vec operator-(const Vec& a, const Vec& b) {
    if (a.size() != b.size()) throw std::invalid_argument("vector dimension mismatch");
    Vec r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] - b[i];
    return r;
}

Vec scale_vec(const Vec& v, const Rat& k) {
    Vec r(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) r[i] = v[i] * k;
    return r;
}

Rat max_norm(const Vec& v) {
    Rat m;
    for (const auto& x : v) {
        Rat a = x.abs();
        if (a > m) m = a;
    }
    return m;
}

std::string to_string(const Vec& v) {
    std::string s = "(";
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (i) s += ", ";
        s += v[i].str();
    }
    return s + ")";
}

Vec parse_vec(std::string_view text) {
    Vec out;
    std::size_t start = 0;
    while (start <= text.size()) {
        auto comma = text.find(',', start);
        auto piece = text.substr(start, comma == std::string_view::npos ? std::string_view::npos : comma - start);
        out.push_back(Rat::parse(piece));
        if (comma == std::string_view::npos) break;
        start = comma + 1;
    }
    return out;
}

}  // namespace cfforge
