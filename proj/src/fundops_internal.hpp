#pragma once

#include <functional>
#include <string>
#include <vector>

#include "grf/error.hpp"
#include "grf/fundops.hpp"

namespace grf::detail {

// A functor assembled from blocks of another functor X: at each target object
// a list of source objects of X, and for each target morphism the nonzero
// blocks (from summand, to summand, X-morphism). Specs depend only on sites
// and are cached.
struct SumSpec {
    SitePtr target;
    std::vector<std::vector<int>> summ;
    std::vector<std::vector<Subspace>> label;
    struct Comp {
        int from, to, mor;
    };
    std::vector<std::vector<Comp>> comps;
};

FunctorPtr build_sum(const Functor& X, const SumSpec& S, const std::string& name);
NatTrans build_sum_nat(const NatTrans& t, const FunctorPtr& src, const FunctorPtr& tgt, const SumSpec& S);
// Offset of each summand at a target object.
std::vector<int> sum_offsets(const Functor& X, const SumSpec& S, int x);

const SumSpec& omega_spec(const SitePtr& gr);
const SumSpec& varpi_spec(const SitePtr& surj);
const SumSpec& varpi_inj_spec(const SitePtr& inj);
const SumSpec& frak_J_spec(const SitePtr& gr);
const SumSpec& cal_J_spec(const SitePtr& gr);
const SumSpec& omega_tilde_spec(const SitePtr& tilde, bool prime);

SiteMap compose_maps(const SiteMap& second, const SiteMap& first);

// G applied to the morphism m : x -> y of G's site.
Matrix act_at(const Functor& G, const SiteObject& x, const SiteObject& y, const Matrix& m);
// Value dimension of G at a skeletal object (throws RangeMismatch when absent).
int dim_at(const Functor& G, const SiteObject& x);

NatTrans make_nat(const FunctorPtr& src, const FunctorPtr& tgt,
                  const std::function<Matrix(const SiteObject&)>& comp);
NatTrans restrict_nat(const NatTrans& t, const SitePtr& s);
// Restriction of t to the common site of t and the given site.
SitePtr meet(const SitePtr& a, const SitePtr& b);

// X with mono * X = target, or throws NotNatural when the columns of target
// leave the image of mono.
Matrix factor_through(const Field& F, const Matrix& mono, const Matrix& target);

// W in F^b viewed inside F^n through the first b coordinates, and back.
Subspace pad(const Subspace& W, int n);
Subspace unpad(const Subspace& W, int b);

// eta on a natural transformation t : X -> Y, between eta X and eta Y.
NatTrans eta_nat(const NatTrans& t, const FunctorPtr& src, const FunctorPtr& tgt);

bool same_nat(const NatTrans& a, const NatTrans& b);
bool is_identity(const NatTrans& t);

}  // namespace grf::detail
