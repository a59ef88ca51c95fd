#include "ring.hpp"

#include <cctype>
#include <stdexcept>
#include <utility>

namespace birow {

namespace {

MatQ mat_zero(int dim) {
    MatQ m;
    m.dim = dim;
    m.entries.assign(static_cast<std::size_t>(dim) * dim, mpq_class(0));
    return m;
}

MatQ mat_identity(int dim) {
    MatQ m = mat_zero(dim);
    for (int i = 0; i < dim; ++i) m.at(i, i) = 1;
    return m;
}

void require_same_ring(const RingElement& x, const RingElement& y) {
    if (!(x.ring == y.ring)) throw std::invalid_argument("ring descriptor mismatch");
}

/// Exact Gauss-Jordan on [A | I]: rows are first scaled integral (lcm of the
/// A-part denominators), then eliminated with partial pivoting by largest
/// absolute value. Returns the right block, or nothing if A is singular.
std::optional<MatQ> invert_matrix(const MatQ& a) {
    const int d = a.dim;
    std::vector<std::vector<mpq_class>> aug(static_cast<std::size_t>(d));
    for (int r = 0; r < d; ++r) {
        aug[r].assign(static_cast<std::size_t>(2) * d, mpq_class(0));
        for (int c = 0; c < d; ++c) aug[r][c] = a.at(r, c);
        aug[r][d + r] = 1;
    }
    for (int r = 0; r < d; ++r) {
        mpz_class l(1);
        for (int c = 0; c < d; ++c) {
            mpz_class den = aug[r][c].get_den();
            mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), den.get_mpz_t());
        }
        if (l != 1) {
            mpq_class scale(l);
            for (int c = 0; c < 2 * d; ++c) {
                mpq_class v = aug[r][c] * scale;
                aug[r][c] = v;
            }
        }
    }
    for (int col = 0; col < d; ++col) {
        int pivot = -1;
        for (int r = col; r < d; ++r) {
            if (aug[r][col] == 0) continue;
            if (pivot < 0) {
                pivot = r;
            } else {
                mpq_class cand = abs(aug[r][col]);
                mpq_class best = abs(aug[pivot][col]);
                if (cand > best) pivot = r;
            }
        }
        if (pivot < 0) return std::nullopt;
        std::swap(aug[col], aug[pivot]);
        mpq_class pv = aug[col][col];
        for (int c = 0; c < 2 * d; ++c) {
            mpq_class v = aug[col][c] / pv;
            aug[col][c] = v;
        }
        for (int r = 0; r < d; ++r) {
            if (r == col || aug[r][col] == 0) continue;
            mpq_class factor = aug[r][col];
            for (int c = col; c < 2 * d; ++c) {
                mpq_class v = aug[r][c] - factor * aug[col][c];
                aug[r][c] = v;
            }
        }
    }
    MatQ inv = mat_zero(d);
    for (int r = 0; r < d; ++r)
        for (int c = 0; c < d; ++c) inv.at(r, c) = aug[r][d + c];
    return inv;
}

mpq_class rational_from_stream(SplitMix64& rng, long bound, bool allow_zero) {
    long num = 0;
    do {
        num = rng.range(-bound, bound);
    } while (num == 0 && !allow_zero);
    long den = rng.range(1, bound);
    mpq_class q{mpz_class(num), mpz_class(den)};
    q.canonicalize();
    return q;
}

}  // namespace

std::string RingDescriptor::spec() const {
    switch (kind) {
        case RingKind::exact_rational: return "q";
        case RingKind::rational_matrix: return "mat:" + std::to_string(dim);
        case RingKind::tropical_max_plus: return "trop";
    }
    throw std::logic_error("bad ring kind");
}

nlohmann::json RingDescriptor::to_json() const {
    nlohmann::json j;
    switch (kind) {
        case RingKind::exact_rational: j["kind"] = "exact_rational"; break;
        case RingKind::rational_matrix:
            j["kind"] = "rational_matrix";
            j["dim"] = dim;
            break;
        case RingKind::tropical_max_plus: j["kind"] = "tropical_max_plus"; break;
    }
    return j;
}

RingDescriptor RingDescriptor::from_spec(const std::string& s) {
    if (s == "q") return {RingKind::exact_rational, 0};
    if (s == "trop") return {RingKind::tropical_max_plus, 0};
    if (s.rfind("mat:", 0) == 0) {
        const std::string num = s.substr(4);
        if (num.empty() || num.find_first_not_of("0123456789") != std::string::npos)
            throw std::invalid_argument("bad ring spec '" + s + "': expected mat:N");
        long d = std::stol(num);
        if (d < 1 || d > 32) throw std::invalid_argument("bad ring spec '" + s + "': dim out of range");
        return {RingKind::rational_matrix, static_cast<int>(d)};
    }
    throw std::invalid_argument("bad ring spec '" + s + "': expected q | mat:N | trop");
}

RingDescriptor RingDescriptor::from_json(const nlohmann::json& j) {
    if (j.is_string()) return from_spec(j.get<std::string>());
    if (!j.is_object() || !j.contains("kind") || !j.at("kind").is_string())
        throw std::invalid_argument("ring descriptor: expected {\"kind\": ...} or a spec string");
    const std::string kind = j.at("kind").get<std::string>();
    if (kind == "exact_rational") return {RingKind::exact_rational, 0};
    if (kind == "tropical_max_plus") return {RingKind::tropical_max_plus, 0};
    if (kind == "rational_matrix") {
        if (!j.contains("dim") || !j.at("dim").is_number_integer())
            throw std::invalid_argument("ring descriptor: rational_matrix needs integer \"dim\"");
        long d = j.at("dim").get<long>();
        if (d < 1 || d > 32) throw std::invalid_argument("ring descriptor: dim out of range");
        return {RingKind::rational_matrix, static_cast<int>(d)};
    }
    throw std::invalid_argument("ring descriptor: unknown kind '" + kind + "'");
}

RingElement ring_zero(const RingDescriptor& d) {
    switch (d.kind) {
        case RingKind::exact_rational: return {d, mpq_class(0)};
        case RingKind::rational_matrix: return {d, mat_zero(d.dim)};
        case RingKind::tropical_max_plus: return {d, TropVal{}};
    }
    throw std::logic_error("bad ring kind");
}

RingElement ring_one(const RingDescriptor& d) {
    switch (d.kind) {
        case RingKind::exact_rational: return {d, mpq_class(1)};
        case RingKind::rational_matrix: return {d, mat_identity(d.dim)};
        case RingKind::tropical_max_plus: return {d, TropVal{true, mpq_class(0)}};
    }
    throw std::logic_error("bad ring kind");
}

RingElement add(const RingElement& x, const RingElement& y) {
    require_same_ring(x, y);
    switch (x.ring.kind) {
        case RingKind::exact_rational: {
            mpq_class s = std::get<mpq_class>(x.payload) + std::get<mpq_class>(y.payload);
            return {x.ring, std::move(s)};
        }
        case RingKind::rational_matrix: {
            const MatQ& a = std::get<MatQ>(x.payload);
            const MatQ& b = std::get<MatQ>(y.payload);
            MatQ s = mat_zero(a.dim);
            for (std::size_t i = 0; i < s.entries.size(); ++i) {
                mpq_class v = a.entries[i] + b.entries[i];
                s.entries[i] = v;
            }
            return {x.ring, std::move(s)};
        }
        case RingKind::tropical_max_plus: {
            const TropVal& a = std::get<TropVal>(x.payload);
            const TropVal& b = std::get<TropVal>(y.payload);
            if (!a.finite) return y;
            if (!b.finite) return x;
            return a.t >= b.t ? x : y;
        }
    }
    throw std::logic_error("bad ring kind");
}

RingElement mul(const RingElement& x, const RingElement& y) {
    require_same_ring(x, y);
    switch (x.ring.kind) {
        case RingKind::exact_rational: {
            mpq_class p = std::get<mpq_class>(x.payload) * std::get<mpq_class>(y.payload);
            return {x.ring, std::move(p)};
        }
        case RingKind::rational_matrix: {
            const MatQ& a = std::get<MatQ>(x.payload);
            const MatQ& b = std::get<MatQ>(y.payload);
            const int d = a.dim;
            MatQ p = mat_zero(d);
            for (int i = 0; i < d; ++i)
                for (int k = 0; k < d; ++k) {
                    if (a.at(i, k) == 0) continue;
                    for (int j = 0; j < d; ++j) {
                        mpq_class v = p.at(i, j) + a.at(i, k) * b.at(k, j);
                        p.at(i, j) = v;
                    }
                }
            return {x.ring, std::move(p)};
        }
        case RingKind::tropical_max_plus: {
            const TropVal& a = std::get<TropVal>(x.payload);
            const TropVal& b = std::get<TropVal>(y.payload);
            if (!a.finite || !b.finite) return {x.ring, TropVal{}};
            mpq_class s = a.t + b.t;
            return {x.ring, TropVal{true, std::move(s)}};
        }
    }
    throw std::logic_error("bad ring kind");
}

PartialValue try_invert(const RingElement& x) {
    switch (x.ring.kind) {
        case RingKind::exact_rational: {
            const mpq_class& q = std::get<mpq_class>(x.payload);
            if (q == 0) return {};
            mpq_class inv = 1 / q;
            return RingElement{x.ring, std::move(inv)};
        }
        case RingKind::rational_matrix: {
            auto inv = invert_matrix(std::get<MatQ>(x.payload));
            if (!inv) return {};
            return RingElement{x.ring, std::move(*inv)};
        }
        case RingKind::tropical_max_plus: {
            const TropVal& t = std::get<TropVal>(x.payload);
            if (!t.finite) return {};
            mpq_class neg = -t.t;
            return RingElement{x.ring, TropVal{true, std::move(neg)}};
        }
    }
    throw std::logic_error("bad ring kind");
}

bool is_invertible(const RingElement& x) { return try_invert(x).defined(); }

PartialValue padd(const PartialValue& x, const PartialValue& y) {
    if (!x.defined() || !y.defined()) return {};
    return add(*x, *y);
}

PartialValue pmul(const PartialValue& x, const PartialValue& y) {
    if (!x.defined() || !y.defined()) return {};
    return mul(*x, *y);
}

PartialValue pinv(const PartialValue& x) {
    if (!x.defined()) return {};
    return try_invert(*x);
}

std::string rational_to_string(const mpq_class& q) { return q.get_str(); }

mpq_class rational_from_string(const std::string& s) {
    const auto bad = [&s]() {
        return std::invalid_argument("bad rational '" + s + "': expected \"p\" or \"p/q\" with q != 0");
    };
    if (s.empty()) throw bad();
    std::string num = s, den = "1";
    if (auto slash = s.find('/'); slash != std::string::npos) {
        num = s.substr(0, slash);
        den = s.substr(slash + 1);
    }
    const auto digits = [](const std::string& part, bool sign_ok) {
        if (part.empty()) return false;
        std::size_t i = 0;
        if (sign_ok && part[0] == '-') i = 1;
        if (i == part.size()) return false;
        for (; i < part.size(); ++i)
            if (!std::isdigit(static_cast<unsigned char>(part[i]))) return false;
        return true;
    };
    if (!digits(num, true) || !digits(den, false)) throw bad();
    mpz_class n(num), d(den);
    if (d == 0) throw bad();
    mpq_class q(n, d);
    q.canonicalize();
    return q;
}

std::string to_string(const RingElement& x) {
    switch (x.ring.kind) {
        case RingKind::exact_rational: return rational_to_string(std::get<mpq_class>(x.payload));
        case RingKind::rational_matrix: {
            const MatQ& m = std::get<MatQ>(x.payload);
            std::string s = "[";
            for (int r = 0; r < m.dim; ++r) {
                s += r ? ", [" : "[";
                for (int c = 0; c < m.dim; ++c) {
                    if (c) s += ", ";
                    s += rational_to_string(m.at(r, c));
                }
                s += "]";
            }
            return s + "]";
        }
        case RingKind::tropical_max_plus: {
            const TropVal& t = std::get<TropVal>(x.payload);
            return t.finite ? rational_to_string(t.t) : "-inf";
        }
    }
    throw std::logic_error("bad ring kind");
}

std::string to_string(const PartialValue& x) { return x.defined() ? to_string(*x) : "undef"; }

namespace {
std::size_t rational_bits(const mpq_class& q) {
    mpz_class num = q.get_num(), den = q.get_den();
    std::size_t nb = mpz_sizeinbase(num.get_mpz_t(), 2);
    std::size_t db = mpz_sizeinbase(den.get_mpz_t(), 2);
    return nb > db ? nb : db;
}
}  // namespace

std::size_t bit_size(const RingElement& x) {
    switch (x.ring.kind) {
        case RingKind::exact_rational: return rational_bits(std::get<mpq_class>(x.payload));
        case RingKind::rational_matrix: {
            std::size_t best = 1;
            for (const auto& e : std::get<MatQ>(x.payload).entries) {
                std::size_t b = rational_bits(e);
                if (b > best) best = b;
            }
            return best;
        }
        case RingKind::tropical_max_plus: {
            const TropVal& t = std::get<TropVal>(x.payload);
            return t.finite ? rational_bits(t.t) : 1;
        }
    }
    throw std::logic_error("bad ring kind");
}

nlohmann::json element_to_json(const RingElement& x) {
    switch (x.ring.kind) {
        case RingKind::exact_rational:
            return rational_to_string(std::get<mpq_class>(x.payload));
        case RingKind::rational_matrix: {
            const MatQ& m = std::get<MatQ>(x.payload);
            nlohmann::json arr = nlohmann::json::array();
            for (const auto& e : m.entries) arr.push_back(rational_to_string(e));
            return arr;
        }
        case RingKind::tropical_max_plus: {
            const TropVal& t = std::get<TropVal>(x.payload);
            nlohmann::json j;
            j["t"] = t.finite ? rational_to_string(t.t) : "-inf";
            return j;
        }
    }
    throw std::logic_error("bad ring kind");
}

RingElement element_from_json(const RingDescriptor& d, const nlohmann::json& j) {
    switch (d.kind) {
        case RingKind::exact_rational: {
            if (!j.is_string()) throw std::invalid_argument("rational element: expected a \"p/q\" string");
            return {d, rational_from_string(j.get<std::string>())};
        }
        case RingKind::rational_matrix: {
            const std::size_t want = static_cast<std::size_t>(d.dim) * d.dim;
            if (!j.is_array() || j.size() != want)
                throw std::invalid_argument("matrix element: expected a row-major array of " +
                                            std::to_string(want) + " strings");
            MatQ m = mat_zero(d.dim);
            for (std::size_t i = 0; i < want; ++i) {
                if (!j[i].is_string())
                    throw std::invalid_argument("matrix element: entry " + std::to_string(i) +
                                                " is not a string");
                m.entries[i] = rational_from_string(j[i].get<std::string>());
            }
            return {d, std::move(m)};
        }
        case RingKind::tropical_max_plus: {
            if (!j.is_object() || !j.contains("t") || !j.at("t").is_string())
                throw std::invalid_argument("tropical element: expected {\"t\": \"p/q\"} or {\"t\": \"-inf\"}");
            const std::string s = j.at("t").get<std::string>();
            if (s == "-inf") return {d, TropVal{}};
            return {d, TropVal{true, rational_from_string(s)}};
        }
    }
    throw std::logic_error("bad ring kind");
}

RingElement random_element(const RingDescriptor& d, SplitMix64& rng, long bound) {
    if (bound < 1) throw std::invalid_argument("entry bound must be >= 1");
    switch (d.kind) {
        case RingKind::exact_rational:
            return {d, rational_from_stream(rng, bound, /*allow_zero=*/true)};
        case RingKind::rational_matrix: {
            MatQ m = mat_zero(d.dim);
            for (auto& e : m.entries) e = static_cast<long>(rng.range(-bound, bound));
            return {d, std::move(m)};
        }
        case RingKind::tropical_max_plus: {
            if (rng.below(8) == 0) return {d, TropVal{}};
            return {d, TropVal{true, rational_from_stream(rng, bound, true)}};
        }
    }
    throw std::logic_error("bad ring kind");
}

RingElement random_invertible(const RingDescriptor& d, SplitMix64& rng, long bound) {
    if (bound < 1) throw std::invalid_argument("entry bound must be >= 1");
    switch (d.kind) {
        case RingKind::exact_rational:
            return {d, rational_from_stream(rng, bound, /*allow_zero=*/false)};
        case RingKind::rational_matrix: {
            for (int attempt = 0; attempt < 1000; ++attempt) {
                MatQ m = mat_zero(d.dim);
                for (auto& e : m.entries) e = static_cast<long>(rng.range(-bound, bound));
                RingElement cand{d, std::move(m)};
                if (is_invertible(cand)) return cand;
            }
            throw std::runtime_error("random_invertible: 1000 rejections without an invertible matrix");
        }
        case RingKind::tropical_max_plus:
            // Every finite value is invertible.
            return {d, TropVal{true, rational_from_stream(rng, bound, true)}};
    }
    throw std::logic_error("bad ring kind");
}

RingElement random_invertible(const RingDescriptor& d, std::uint64_t seed, long bound) {
    SplitMix64 rng(seed);
    return random_invertible(d, rng, bound);
}

Verdict check_inverse_laws(const RingElement& x, const RingElement& y) {
    Verdict v;
    v.name = "inverse_laws";
    v.trials = 1;
    PartialValue ix = try_invert(x), iy = try_invert(y);
    if (!ix.defined() || !iy.defined()) {
        v.status = Status::not_applicable;
        v.detail["reason"] = "an argument is not invertible";
        return v;
    }
    const auto record = [&](const char* identity, const PartialValue& lhs, const PartialValue& rhs) {
        nlohmann::json w;
        w["identity"] = identity;
        w["x"] = to_string(x);
        w["y"] = to_string(y);
        w["lhs"] = to_string(lhs);
        w["rhs"] = to_string(rhs);
        v.failures.push_back(std::move(w));
    };
    PartialValue iix = pinv(ix);
    if (!(iix == PartialValue(x))) record("inv(inv(x)) = x", iix, x);
    PartialValue ixy = try_invert(mul(x, y));
    PartialValue prod = pmul(iy, ix);
    if (!(ixy == prod)) record("inv(x*y) = inv(y)*inv(x)", ixy, prod);
    v.status = v.failures.empty() ? Status::pass : Status::fail;
    return v;
}

Verdict check_sum_inverse_identity(const RingElement& a, const RingElement& b) {
    Verdict v;
    v.name = "sum_inverse_identity";
    v.trials = 1;
    RingElement s = add(a, b);
    PartialValue is = try_invert(s);
    if (!is.defined()) {
        v.status = Status::not_applicable;
        v.detail["reason"] = "a+b is not invertible";
        return v;
    }
    const auto record = [&](const char* identity, const PartialValue& lhs, const PartialValue& rhs) {
        nlohmann::json w;
        w["identity"] = identity;
        w["a"] = to_string(a);
        w["b"] = to_string(b);
        w["lhs"] = to_string(lhs);
        w["rhs"] = to_string(rhs);
        v.failures.push_back(std::move(w));
    };
    RingElement lhs = mul(mul(a, *is), b);
    RingElement rhs = mul(mul(b, *is), a);
    if (!(lhs == rhs)) record("a*inv(a+b)*b = b*inv(a+b)*a", lhs, rhs);
    PartialValue ia = try_invert(a), ib = try_invert(b);
    if (ia.defined() && ib.defined()) {
        RingElement u = add(*ia, *ib);
        PartialValue iu = try_invert(u);
        if (!iu.defined())
            record("inv(a)+inv(b) invertible", iu, lhs);
        else if (!(*iu == lhs))
            record("inv(inv(a)+inv(b)) = a*inv(a+b)*b", *iu, lhs);
    }
    v.status = v.failures.empty() ? Status::pass : Status::fail;
    return v;
}

}  // namespace birow
