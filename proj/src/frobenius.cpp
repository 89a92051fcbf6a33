#include "cmdf/frobenius.hpp"

#include "cmdf/errors.hpp"

#include <deque>

namespace cmdf {

ResidueRing::ResidueRing(Order order, Int N) : order_(std::move(order)), N_(std::move(N)) {
    check(N_ >= 1, "modulus must be positive");
    Int num = order_.disc * order_.disc - order_.disc;
    require_invariant(num % 4 == 0, "omega norm is not integral");
    omega_norm_ = num / 4;
}

ResidueElement ResidueRing::reduce(const Int& u, const Int& v) const {
    return {mod_floor(u, N_), mod_floor(v, N_)};
}

ResidueElement ResidueRing::mul(const ResidueElement& a, const ResidueElement& b) const {
    // (u1 + v1 w)(u2 + v2 w), w^2 = disc*w - omega_norm
    Int u = a.u * b.u - a.v * b.v * omega_norm_;
    Int v = a.u * b.v + a.v * b.u + a.v * b.v * order_.disc;
    return reduce(u, v);
}

Int ResidueRing::norm(const ResidueElement& a) const {
    return mod_floor(a.u * a.u + a.u * a.v * order_.disc + a.v * a.v * omega_norm_, N_);
}

bool ResidueRing::is_unit(const ResidueElement& a) const {
    Int g;
    Int n = norm(a);
    mpz_gcd(g.get_mpz_t(), n.get_mpz_t(), N_.get_mpz_t());
    return g == 1;
}

ResidueElement ResidueRing::conj(const ResidueElement& a) const {
    return reduce(a.u + a.v * order_.disc, -a.v);
}

ResidueElement ResidueRing::inverse(const ResidueElement& a) const {
    Int n = norm(a);
    Int ninv;
    int ok = mpz_invert(ninv.get_mpz_t(), n.get_mpz_t(), N_.get_mpz_t());
    check(ok != 0, "residue element is not a unit");
    ResidueElement cb = conj(a);
    return reduce(cb.u * ninv, cb.v * ninv);
}

BruteForceUnits residue_units_bruteforce(const Order& order, const Int& N) {
    check(N >= 1 && N <= 200, "brute-force enumeration is limited to N <= 200");
    ResidueRing R(order, N);
    BruteForceUnits out;
    out.count = 0;
    long n = static_cast<long>(N.get_si());
    for (long u = 0; u < n; ++u)
        for (long v = 0; v < n; ++v) {
            ResidueElement e{u, v};
            if (R.is_unit(e)) {
                out.count += 1;
                out.elements.push_back(e);
            }
        }
    return out;
}

FrobeniusPair frobenius_element(const Curve& c, const Order& order, long q, const Int& N) {
    check(is_prime(Int(q)), "q must be prime");
    check(kronecker(order.disc, Int(q)) == 1, "q must split in the order");
    Int g;
    Int qq(q);
    mpz_gcd(g.get_mpz_t(), qq.get_mpz_t(), N.get_mpz_t());
    check(g == 1, "q must be coprime to the modulus");
    check(good_reduction(c, Int(q)), "bad reduction at q");

    long a = trace_of_frobenius(c, q); // sign from the actual count
    // 4q = a^2 + |disc| b^2, b >= 1
    Int absD = -order.disc;
    Int target = 4 * Int(q) - Int(a) * Int(a);
    long b = 0;
    for (long bb = 1; Int(bb) * Int(bb) * absD <= target; ++bb) {
        if (Int(bb) * Int(bb) * absD == target) {
            b = bb;
            break;
        }
    }
    check(b != 0, "no representation 4q = a^2 + |disc| b^2: wrong CM order for this curve");

    ResidueRing R(order, N);
    Int half = (Int(a) - Int(b) * order.disc);
    require_invariant(half % 2 == 0, "Frobenius coordinate (a - b*disc)/2 not integral");
    half /= 2;
    ResidueElement pi = R.reduce(half, b);
    ResidueElement pibar = R.conj(pi);
    require_invariant(R.norm(pi) == mod_floor(Int(q), N), "N(pi) != q mod N");
    return {pi, pibar, a, b};
}

namespace {

struct ElementSet {
    long n;
    std::vector<ResidueElement> elements;
    std::vector<char> member; // n*n bitmap

    explicit ElementSet(long n_) : n(n_), member(static_cast<size_t>(n_ * n_), 0) {}
    size_t key(const ResidueElement& e) const {
        return static_cast<size_t>(e.u.get_si() * n + e.v.get_si());
    }
    bool contains(const ResidueElement& e) const { return member[key(e)] != 0; }
    bool insert(const ResidueElement& e) {
        if (contains(e))
            return false;
        member[key(e)] = 1;
        elements.push_back(e);
        return true;
    }
};

// closure of the generated subgroup, BFS over generator multiplication
void regenerate(const ResidueRing& R, const std::vector<ResidueElement>& gens,
                ElementSet& set) {
    set.elements.clear();
    std::fill(set.member.begin(), set.member.end(), 0);
    set.insert(R.one());
    std::deque<ResidueElement> queue = {R.one()};
    while (!queue.empty()) {
        ResidueElement x = queue.front();
        queue.pop_front();
        for (const auto& g : gens) {
            ResidueElement y = R.mul(x, g);
            if (set.insert(y))
                queue.push_back(y);
        }
    }
}

} // namespace

ImageSubgroup image_subgroup(const Curve& c, const Order& order, const Int& N,
                             long prime_bound) {
    check(N >= 2 && N <= 200, "image subgroup modulus is limited to N <= 200");
    check(prime_bound >= 2 && prime_bound <= 100000, "prime bound is limited to 1e5");

    ResidueRing R(order, N);
    Int full = residue_unit_count(order, N);
    Curve m = minimal_model(c);

    ImageSubgroup out;
    out.N = N;
    out.full_order = full;

    ElementSet set(static_cast<long>(N.get_si()));
    regenerate(R, out.generators, set);
    long quiet = 0; // split primes since the last growth

    for (long q = 2; q <= prime_bound; ++q) {
        if (!is_prime(Int(q)))
            continue;
        if (kronecker(order.disc, Int(q)) != 1)
            continue;
        Int g;
        Int qq(q);
        mpz_gcd(g.get_mpz_t(), qq.get_mpz_t(), N.get_mpz_t());
        if (g != 1)
            continue;
        if (mod_floor(m.disc(), Int(q)) == 0)
            continue;
        ++out.primes_scanned;
        FrobeniusPair fp = frobenius_element(m, order, q, N);
        bool grew = false;
        for (const ResidueElement& gen : {fp.pi, fp.pi_bar}) {
            if (!set.contains(gen)) {
                out.generators.push_back(gen);
                regenerate(R, out.generators, set);
                grew = true;
            }
        }
        quiet = grew ? 0 : quiet + 1;
        if (Int(static_cast<long>(set.elements.size())) == full) {
            out.full = true;
            break;
        }
        if (quiet >= 50) {
            out.stabilized = true;
            break;
        }
    }
    if (Int(static_cast<long>(set.elements.size())) == full)
        out.full = true;

    out.order = static_cast<long>(set.elements.size());
    out.contains_minus_one = set.contains(R.minus_one());
    out.elements = set.elements;
    require_invariant(mod_floor(full, out.order) == 0,
                      "subgroup order does not divide the unit count");
    return out;
}

} // namespace cmdf
