#pragma once

#include <string>
#include <vector>

#include "veerkit/linalg.hpp"

namespace veerkit {

// Generators of {x : a.x >= 0 for a in ineqs, e.x = 0 for e in eqs}: a basis of the
// lineality space and the extreme rays modulo it, all primitive integer vectors.
struct ConeGenerators {
    std::vector<ZVec> lineality;
    std::vector<ZVec> rays;
};
ConeGenerators double_description(const std::vector<ZVec>& ineqs, const std::vector<ZVec>& eqs, int dim);

// Cone dimension cap for dual(): VEERKIT_DIM_CAP when set, else 12.
int dimension_cap();

struct ConeCertificate {
    bool pairings_nonnegative = true;  // every generator against every facet and equation
    bool facets_supported = true;      // each facet tight on enough independent generators
    bool valid() const { return pairings_nonnegative && facets_supported; }
};

// Closed convex polyhedral cone in Q^d, kept in both descriptions. Generators are
// extreme rays plus a lineality basis; facets are facet normals plus a basis of the
// equations of the linear span. Rays are reduced orthogonally to the lineality
// space and facets orthogonally to the equations, so the data is canonical.
class RationalCone {
public:
    static RationalCone from_generators(int dim, const std::vector<ZVec>& gens);
    static RationalCone from_generators(int dim, const std::vector<QVec>& gens);
    static RationalCone from_inequalities(int dim, const std::vector<ZVec>& ineqs,
                                          const std::vector<ZVec>& eqs = {});

    int dim() const { return dim_; }
    const std::vector<ZVec>& extreme_rays() const { return rays_; }
    const std::vector<ZVec>& lineality() const { return lineality_; }
    const std::vector<ZVec>& facets() const { return facets_; }
    const std::vector<ZVec>& equations() const { return equations_; }
    // Extreme rays together with both signs of each lineality vector.
    std::vector<ZVec> generators() const;
    bool is_pointed() const { return lineality_.empty(); }
    bool is_zero() const { return rays_.empty() && lineality_.empty(); }
    int cone_dimension() const { return dim_ - int(equations_.size()); }

    // Throws DimensionGuard above dimension_cap().
    RationalCone dual() const;
    bool contains(const ZVec& x) const;
    bool contains(const QVec& x) const;
    bool contains(const RationalCone& other) const;
    bool equals(const RationalCone& other) const;
    ConeCertificate certify() const;

    std::string to_string() const;

private:
    int dim_ = 0;
    std::vector<ZVec> rays_, lineality_, facets_, equations_;
    void check_dim(int d) const;
};

}  // namespace veerkit
