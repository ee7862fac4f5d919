#include "veerkit/cones.hpp"

#include <algorithm>
#include <cstdint>
#include <cstdlib>
#include <sstream>

#include "veerkit/errors.hpp"

namespace veerkit {

namespace {

using Bits = std::vector<std::uint64_t>;

bool subset(const Bits& a, const Bits& b) {
    for (size_t i = 0; i < a.size(); ++i)
        if (a[i] & ~b[i]) return false;
    return true;
}

Bits meet(const Bits& a, const Bits& b) {
    Bits r(a.size());
    for (size_t i = 0; i < a.size(); ++i) r[i] = a[i] & b[i];
    return r;
}

int popcount(const Bits& a) {
    int c = 0;
    for (auto w : a) c += __builtin_popcountll(w);
    return c;
}

void set_bit(Bits& b, int i) { b[i / 64] |= std::uint64_t(1) << (i % 64); }

// Inverse of a square rational matrix given by integer rows; columns are returned.
std::vector<QVec> inverse_columns(const std::vector<ZVec>& rows) {
    const int n = int(rows.size());
    std::vector<QVec> a(n, QVec(2 * n));
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) a[i][j] = rows[i][j];
        a[i][n + i] = 1;
    }
    for (int c = 0; c < n; ++c) {
        int p = c;
        while (a[p][c] == 0) ++p;
        std::swap(a[p], a[c]);
        Rat inv = 1 / a[c][c];
        for (Rat& x : a[c]) x *= inv;
        for (int i = 0; i < n; ++i) {
            if (i == c || a[i][c] == 0) continue;
            Rat f = a[i][c];
            for (int j = 0; j < 2 * n; ++j) a[i][j] -= f * a[c][j];
        }
    }
    std::vector<QVec> cols(n, QVec(n));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) cols[j][i] = a[i][n + j];
    return cols;
}

void sort_unique(std::vector<ZVec>& v) {
    std::sort(v.begin(), v.end());
    v.erase(std::unique(v.begin(), v.end()), v.end());
}

std::vector<ZVec> negated(std::vector<ZVec> v) {
    for (ZVec& x : v)
        for (Int& c : x) c = -c;
    return v;
}

}  // namespace

ConeGenerators double_description(const std::vector<ZVec>& ineqs, const std::vector<ZVec>& eqs, int dim) {
    for (const auto& r : ineqs)
        if (int(r.size()) != dim) throw DimensionMismatch("constraint length differs from the ambient dimension");
    for (const auto& r : eqs)
        if (int(r.size()) != dim) throw DimensionMismatch("constraint length differs from the ambient dimension");
    ConeGenerators out;
    std::vector<ZVec> all = ineqs;
    all.insert(all.end(), eqs.begin(), eqs.end());
    out.lineality = nullspace(all, dim);
    if (int(out.lineality.size()) == dim) return out;

    // Initial simplicial cone from independent rows: equations, lineality, then inequalities.
    std::vector<ZVec> chosen;
    std::vector<int> chosen_ineq;  // index into ineqs, or -1 for an equality row
    std::vector<bool> ineq_used(ineqs.size()), eq_used(eqs.size());
    auto try_add = [&](const ZVec& r) {
        chosen.push_back(r);
        if (rank(chosen, dim) == int(chosen.size())) return true;
        chosen.pop_back();
        return false;
    };
    for (size_t i = 0; i < eqs.size() && int(chosen.size()) < dim; ++i)
        if (try_add(eqs[i])) eq_used[i] = true, chosen_ineq.push_back(-1);
    for (const ZVec& l : out.lineality)
        if (try_add(l)) chosen_ineq.push_back(-1);
    for (size_t i = 0; i < ineqs.size() && int(chosen.size()) < dim; ++i)
        if (try_add(ineqs[i])) ineq_used[i] = true, chosen_ineq.push_back(int(i));

    const size_t words = (ineqs.size() + 63) / 64 + 1;
    struct Ray {
        ZVec v;
        Bits zero;
    };
    std::vector<Ray> rays;
    std::vector<int> processed;
    for (int i : chosen_ineq)
        if (i >= 0) processed.push_back(i);
    std::vector<QVec> inv = inverse_columns(chosen);
    for (int c = 0; c < dim; ++c) {
        if (chosen_ineq[c] < 0) continue;
        Ray r{primitive(inv[c]), Bits(words)};
        for (int i : processed)
            if (dot(ineqs[i], r.v) == 0) set_bit(r.zero, i);
        rays.push_back(std::move(r));
    }

    const int need = int(rays.size()) - 2;  // adjacent rays share this many tight inequalities
    auto insert = [&](const ZVec& a, int ineq_index) {
        std::vector<Int> val(rays.size());
        std::vector<size_t> pos, neg;
        std::vector<Ray> next;
        for (size_t i = 0; i < rays.size(); ++i) {
            val[i] = dot(a, rays[i].v);
            if (val[i] > 0) pos.push_back(i);
            else if (val[i] < 0) neg.push_back(i);
        }
        for (size_t p : pos)
            for (size_t n : neg) {
                Bits z = meet(rays[p].zero, rays[n].zero);
                if (popcount(z) < need) continue;
                bool adjacent = true;
                for (size_t r = 0; r < rays.size() && adjacent; ++r)
                    if (r != p && r != n && subset(z, rays[r].zero)) adjacent = false;
                if (!adjacent) continue;
                ZVec v(dim);
                for (int j = 0; j < dim; ++j) v[j] = val[p] * rays[n].v[j] - val[n] * rays[p].v[j];
                Ray nr{primitive(std::move(v)), z};
                if (ineq_index >= 0) set_bit(nr.zero, ineq_index);
                next.push_back(std::move(nr));
            }
        for (size_t i = 0; i < rays.size(); ++i) {
            if (val[i] < 0 || (ineq_index < 0 && val[i] > 0)) continue;
            Ray r = rays[i];
            if (ineq_index >= 0 && val[i] == 0) set_bit(r.zero, ineq_index);
            next.push_back(std::move(r));
        }
        rays = std::move(next);
    };
    for (size_t i = 0; i < eqs.size(); ++i)
        if (!eq_used[i]) insert(eqs[i], -1);
    for (size_t i = 0; i < ineqs.size(); ++i)
        if (!ineq_used[i]) insert(ineqs[i], int(i));

    for (Ray& r : rays) out.rays.push_back(std::move(r.v));
    sort_unique(out.rays);
    return out;
}

int dimension_cap() {
    const char* env = std::getenv("VEERKIT_DIM_CAP");
    if (env) {
        char* end = nullptr;
        long v = std::strtol(env, &end, 10);
        if (end != env && *end == '\0' && v > 0) return int(v);
    }
    return 12;
}

RationalCone RationalCone::from_generators(int dim, const std::vector<ZVec>& gens) {
    RationalCone c;
    c.dim_ = dim;
    ConeGenerators d = double_description(gens, {}, dim);
    c.equations_ = d.lineality;
    c.facets_ = d.rays;
    ConeGenerators p = double_description(c.facets_, c.equations_, dim);
    c.lineality_ = p.lineality;
    c.rays_ = p.rays;
    return c;
}

RationalCone RationalCone::from_generators(int dim, const std::vector<QVec>& gens) {
    std::vector<ZVec> z;
    for (const QVec& g : gens) z.push_back(primitive(g));
    return from_generators(dim, z);
}

RationalCone RationalCone::from_inequalities(int dim, const std::vector<ZVec>& ineqs, const std::vector<ZVec>& eqs) {
    RationalCone c;
    c.dim_ = dim;
    ConeGenerators p = double_description(ineqs, eqs, dim);
    c.lineality_ = p.lineality;
    c.rays_ = p.rays;
    ConeGenerators d = double_description(c.rays_, c.lineality_, dim);
    c.equations_ = d.lineality;
    c.facets_ = d.rays;
    return c;
}

std::vector<ZVec> RationalCone::generators() const {
    std::vector<ZVec> g = rays_;
    for (const ZVec& l : lineality_) g.push_back(l);
    for (const ZVec& l : negated(lineality_)) g.push_back(l);
    return g;
}

void RationalCone::check_dim(int d) const {
    if (d != dim_)
        throw DimensionMismatch("cone in dimension " + std::to_string(dim_) + " against dimension " + std::to_string(d));
}

RationalCone RationalCone::dual() const {
    if (dim_ > dimension_cap())
        throw DimensionGuard("cone dimension " + std::to_string(dim_) + " exceeds the cap " +
                             std::to_string(dimension_cap()));
    RationalCone c;
    c.dim_ = dim_;
    c.rays_ = facets_;
    c.lineality_ = equations_;
    c.facets_ = rays_;
    c.equations_ = lineality_;
    return c;
}

bool RationalCone::contains(const ZVec& x) const {
    check_dim(int(x.size()));
    for (const ZVec& f : facets_)
        if (dot(f, x) < 0) return false;
    for (const ZVec& e : equations_)
        if (dot(e, x) != 0) return false;
    return true;
}

bool RationalCone::contains(const QVec& x) const { return contains(primitive(x)); }

bool RationalCone::contains(const RationalCone& other) const {
    check_dim(other.dim_);
    for (const ZVec& g : other.generators())
        if (!contains(g)) return false;
    return true;
}

bool RationalCone::equals(const RationalCone& other) const { return contains(other) && other.contains(*this); }

ConeCertificate RationalCone::certify() const {
    ConeCertificate cert;
    const auto gens = generators();
    for (const ZVec& g : gens) {
        for (const ZVec& f : facets_)
            if (dot(f, g) < 0) cert.pairings_nonnegative = false;
        for (const ZVec& e : equations_)
            if (dot(e, g) != 0) cert.pairings_nonnegative = false;
    }
    for (const ZVec& f : facets_) {
        std::vector<ZVec> tight = lineality_;
        for (const ZVec& r : rays_)
            if (dot(f, r) == 0) tight.push_back(r);
        if (rank(tight, dim_) < cone_dimension() - 1) cert.facets_supported = false;
        bool strict = false;
        for (const ZVec& r : rays_) strict = strict || dot(f, r) > 0;
        if (!strict) cert.facets_supported = false;
    }
    return cert;
}

std::string RationalCone::to_string() const {
    std::ostringstream s;
    s << "cone(dim=" << dim_ << ", rays=[";
    for (size_t i = 0; i < rays_.size(); ++i) s << (i ? "," : "") << veerkit::to_string(rays_[i]);
    s << "], lineality=[";
    for (size_t i = 0; i < lineality_.size(); ++i) s << (i ? "," : "") << veerkit::to_string(lineality_[i]);
    s << "])";
    return s.str();
}

}  // namespace veerkit
