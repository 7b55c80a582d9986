#include "convg/net.hpp"

#include <algorithm>

namespace convg {

DirectedSet::DirectedSet(int m, std::vector<std::uint8_t> leq) : m_(m), leq_(std::move(leq)) {
    require(m >= 0 && leq_.size() == static_cast<size_t>(m) * static_cast<size_t>(m),
            Errc::InvalidArgument, "relation table must be m×m");
    require(check_directed(m_, leq_), Errc::NotDirected,
            "relation is not a directed preorder");
}

bool DirectedSet::check_directed(int m, const std::vector<std::uint8_t>& leq) {
    if (leq.size() != static_cast<size_t>(m) * static_cast<size_t>(m)) return false;
    auto at = [&](int a, int b) { return leq[static_cast<size_t>(a) * m + b] != 0; };
    for (int a = 0; a < m; ++a)
        if (!at(a, a)) return false;
    for (int a = 0; a < m; ++a)
        for (int b = 0; b < m; ++b)
            for (int c = 0; c < m; ++c)
                if (at(a, b) && at(b, c) && !at(a, c)) return false;
    for (int a = 0; a < m; ++a)
        for (int b = 0; b < m; ++b) {
            bool has_ub = false;
            for (int c = 0; c < m && !has_ub; ++c)
                if (at(a, c) && at(b, c)) has_ub = true;
            if (!has_ub) return false;
        }
    return true;
}

DirectedSet DirectedSet::chain(int m) {
    std::vector<std::uint8_t> leq(static_cast<size_t>(m) * m, 0);
    for (int a = 0; a < m; ++a)
        for (int b = a; b < m; ++b) leq[static_cast<size_t>(a) * m + b] = 1;
    return DirectedSet(m, std::move(leq));
}

DirectedSet DirectedSet::cluster(int m) {
    return DirectedSet(m, std::vector<std::uint8_t>(static_cast<size_t>(m) * m, 1));
}

DirectedSet DirectedSet::product(const DirectedSet& a, const DirectedSet& b) {
    int m = a.size() * b.size();
    std::vector<std::uint8_t> leq(static_cast<size_t>(m) * m, 0);
    for (int a1 = 0; a1 < a.size(); ++a1)
        for (int b1 = 0; b1 < b.size(); ++b1)
            for (int a2 = 0; a2 < a.size(); ++a2)
                for (int b2 = 0; b2 < b.size(); ++b2)
                    if (a.leq(a1, a2) && b.leq(b1, b2))
                        leq[static_cast<size_t>(a1 * b.size() + b1) * m + (a2 * b.size() + b2)] = 1;
    return DirectedSet(m, std::move(leq));
}

std::vector<int> DirectedSet::upper_set(int a) const {
    std::vector<int> out;
    for (int d = 0; d < m_; ++d)
        if (leq(a, d)) out.push_back(d);
    return out;
}

Net::Net(DirectedSet domain, CarrierRef carrier, std::vector<int> values)
    : domain_(std::move(domain)), carrier_(std::move(carrier)), values_(std::move(values)) {
    require(values_.size() == static_cast<size_t>(domain_.size()), Errc::InvalidArgument,
            "net valuation must cover the whole domain");
    for (int v : values_)
        require(v >= 0 && v < carrier_->n(), Errc::InvalidArgument,
                "net value outside the carrier");
}

Net Net::constant(DirectedSet domain, CarrierRef carrier, int point) {
    std::vector<int> vals(static_cast<size_t>(domain.size()), point);
    return Net(std::move(domain), std::move(carrier), std::move(vals));
}

PrincipalFilter induced_filter(const Net& net) {
    require(net.domain().size() > 0, Errc::EmptyDomain,
            "a net over the empty domain induces no proper filter");
    std::uint32_t least = net.carrier()->full_mask();
    for (int d = 0; d < net.domain().size(); ++d) {
        std::uint32_t tail = 0;
        for (int e : net.domain().upper_set(d)) tail |= 1u << net.value(e);
        if (std::popcount(tail) < std::popcount(least)) least = tail;
    }
    return PrincipalFilter(PointSet(net.carrier(), least));
}

bool is_subnet(const Net& psi, const Net& phi) {
    require(same_carrier(psi.carrier(), phi.carrier()), Errc::CarrierMismatch,
            "subnet comparison needs a common carrier");
    return finer(induced_filter(psi), induced_filter(phi));
}

Net mix(const Net& phi, const Net& psi, const std::vector<bool>& selector) {
    require(phi.domain() == psi.domain(), Errc::DomainMismatch,
            "mixing needs a shared domain; lift to the product domain first");
    require(same_carrier(phi.carrier(), psi.carrier()), Errc::CarrierMismatch,
            "mixing needs a common carrier");
    require(selector.size() == static_cast<size_t>(phi.domain().size()), Errc::InvalidArgument,
            "selector must cover the whole domain");
    std::vector<int> vals(selector.size());
    for (size_t d = 0; d < selector.size(); ++d)
        vals[d] = selector[d] ? psi.values()[d] : phi.values()[d];
    return Net(phi.domain(), phi.carrier(), std::move(vals));
}

std::pair<Net, Net> lift_to_product(const Net& phi, const Net& psi) {
    DirectedSet prod = DirectedSet::product(phi.domain(), psi.domain());
    int nb = psi.domain().size();
    std::vector<int> lv(static_cast<size_t>(prod.size())), rv(static_cast<size_t>(prod.size()));
    for (int a = 0; a < phi.domain().size(); ++a)
        for (int b = 0; b < nb; ++b) {
            lv[static_cast<size_t>(a * nb + b)] = phi.value(a);
            rv[static_cast<size_t>(a * nb + b)] = psi.value(b);
        }
    return {Net(prod, phi.carrier(), std::move(lv)), Net(prod, psi.carrier(), std::move(rv))};
}

Net canonical_net(const PrincipalFilter& f) {
    // Domain elements are the pairs ⟨x, M⟩ with x ∈ M ∈ F; ⟨x,M⟩ ≤ ⟨y,G⟩ iff G ⊆ M.
    struct Elem {
        int point;
        std::uint32_t member;
    };
    std::vector<Elem> elems;
    const CarrierRef& carrier = f.carrier();
    std::uint32_t full = carrier->full_mask();
    for (std::uint32_t m = f.base().bits(); m <= full; ++m) {
        if ((m & f.base().bits()) != f.base().bits()) continue;
        for (int x = 0; x < carrier->n(); ++x)
            if ((m >> x) & 1u) elems.push_back({x, m});
    }
    int sz = static_cast<int>(elems.size());
    std::vector<std::uint8_t> leq(static_cast<size_t>(sz) * sz, 0);
    for (int a = 0; a < sz; ++a)
        for (int b = 0; b < sz; ++b)
            if ((elems[static_cast<size_t>(b)].member & ~elems[static_cast<size_t>(a)].member) == 0)
                leq[static_cast<size_t>(a) * sz + b] = 1;
    std::vector<int> vals(static_cast<size_t>(sz));
    for (int a = 0; a < sz; ++a) vals[static_cast<size_t>(a)] = elems[static_cast<size_t>(a)].point;
    return Net(DirectedSet(sz, std::move(leq)), carrier, std::move(vals));
}

std::vector<DirectedSet> all_directed_preorders(int m) {
    require(m >= 1 && m <= 4, Errc::TooLarge, "preorder enumeration is meant for 1..4 elements");
    std::vector<DirectedSet> out;
    int off = m * m - m;  // free off-diagonal bits
    for (std::uint32_t code = 0; code < (1u << off); ++code) {
        std::vector<std::uint8_t> leq(static_cast<size_t>(m) * m, 0);
        int k = 0;
        for (int a = 0; a < m; ++a)
            for (int b = 0; b < m; ++b) {
                if (a == b)
                    leq[static_cast<size_t>(a) * m + b] = 1;
                else
                    leq[static_cast<size_t>(a) * m + b] = (code >> k++) & 1u;
            }
        if (DirectedSet::check_directed(m, leq)) out.emplace_back(m, std::move(leq));
    }
    return out;
}

}  // namespace convg
