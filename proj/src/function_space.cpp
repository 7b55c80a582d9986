#include "convg/function_space.hpp"

namespace convg {

std::string function_label(int index) { return "f" + std::to_string(index); }

int FunctionSpace::function_index(const std::vector<int>& graph) const {
    for (size_t i = 0; i < functions.size(); ++i)
        if (functions[i] == graph) return static_cast<int>(i);
    return -1;
}

SpaceMap FunctionSpace::as_map(int index) const {
    return SpaceMap(source, target, functions.at(static_cast<size_t>(index)));
}

std::vector<std::vector<int>> continuous_maps(const Preconvergence& x, const Preconvergence& y) {
    std::vector<std::vector<int>> out;
    if (x.n() == 0) {
        out.push_back({});  // the empty map, vacuously continuous
        return out;
    }
    if (y.n() == 0) return out;  // no maps from a nonempty carrier into the empty one
    std::vector<int> graph(static_cast<size_t>(x.n()), 0);
    while (true) {
        if (is_continuous(SpaceMap(x, y, graph)).continuous) out.push_back(graph);
        // Lexicographic odometer, leftmost point most significant.
        int i = x.n() - 1;
        while (i >= 0 && graph[static_cast<size_t>(i)] == y.n() - 1) {
            graph[static_cast<size_t>(i)] = 0;
            --i;
        }
        if (i < 0) break;
        ++graph[static_cast<size_t>(i)];
    }
    return out;
}

FunctionSpace continuous_convergence(const Preconvergence& x, const Preconvergence& y) {
    std::vector<std::vector<int>> fns = continuous_maps(x, y);
    int fcount = static_cast<int>(fns.size());
    require(fcount <= 16, Errc::TooLarge, "C(X,Y) exceeds 16 functions");
    std::vector<std::string> labels;
    for (int i = 0; i < fcount; ++i) labels.push_back(function_label(i));
    CarrierRef carrier = Carrier::make(std::move(labels));

    std::uint32_t ffull = carrier->full_mask();
    std::uint32_t xfull = x.full_mask();

    // Per-function images of every base.
    std::vector<std::vector<std::uint32_t>> fn_img(static_cast<size_t>(fcount));
    for (int f = 0; f < fcount; ++f) {
        auto& img = fn_img[static_cast<size_t>(f)];
        img.assign(static_cast<size_t>(xfull) + 1, 0u);
        for (std::uint32_t a = 1; a <= xfull && xfull != 0; ++a)
            for (int p = 0; p < x.n(); ++p)
                if ((a >> p) & 1u) img[a] |= 1u << fns[static_cast<size_t>(f)][static_cast<size_t>(p)];
    }

    std::vector<std::uint32_t> table(ffull, 0u);
    std::vector<std::uint32_t> target_limits(static_cast<size_t>(xfull) + 1, 0u);
    for (std::uint32_t g = 1; g <= ffull && ffull != 0; ++g) {
        // limits_Y(G[A]) for every base A, shared across candidate limits f.
        for (std::uint32_t a = 1; a <= xfull && xfull != 0; ++a) {
            std::uint32_t ga = 0;
            for (int gi = 0; gi < fcount; ++gi)
                if ((g >> gi) & 1u) ga |= fn_img[static_cast<size_t>(gi)][a];
            target_limits[a] = y.limits_bits(ga);
        }
        std::uint32_t lim = 0;
        for (int f = 0; f < fcount; ++f) {
            bool ok = true;
            for (std::uint32_t a = 1; a <= xfull && xfull != 0 && ok; ++a) {
                std::uint32_t la = x.limits_bits(a);
                if (la == 0) continue;
                std::uint32_t ly = target_limits[a];
                for (int p = 0; p < x.n() && ok; ++p)
                    if (((la >> p) & 1u) &&
                        !((ly >> fns[static_cast<size_t>(f)][static_cast<size_t>(p)]) & 1u))
                        ok = false;
            }
            if (ok) lim |= 1u << f;
        }
        table[g - 1] = lim;
    }
    return FunctionSpace{x, y, std::move(fns), Preconvergence(carrier, std::move(table))};
}

SpaceMap eval_map(const FunctionSpace& fs) {
    std::vector<Preconvergence> factors{fs.space, fs.source};
    Preconvergence prod = product(factors);
    std::vector<int> graph(static_cast<size_t>(prod.n()));
    int xn = fs.source.n();
    for (int p = 0; p < prod.n(); ++p) {
        int f = p / xn;
        int xpt = p % xn;
        graph[static_cast<size_t>(p)] = fs.functions[static_cast<size_t>(f)][static_cast<size_t>(xpt)];
    }
    return SpaceMap(prod, fs.target, std::move(graph));
}

CurryResult curry(const SpaceMap& h, const Preconvergence& z, const Preconvergence& x) {
    std::vector<Preconvergence> factors{z, x};
    require(h.source() == product(factors), Errc::ShapeMismatch,
            "curry needs a map whose source is the product Z×X");
    require(is_continuous(h).continuous, Errc::NotContinuous, "curry needs a continuous map");
    FunctionSpace fs = continuous_convergence(x, h.target());
    std::vector<int> graph(static_cast<size_t>(z.n()));
    for (int zp = 0; zp < z.n(); ++zp) {
        std::vector<int> section(static_cast<size_t>(x.n()));
        for (int xp = 0; xp < x.n(); ++xp)
            section[static_cast<size_t>(xp)] = h.apply(zp * x.n() + xp);
        int idx = fs.function_index(section);
        if (idx < 0)
            throw Falsification("a section h(z,·) of a continuous map is not continuous");
        graph[static_cast<size_t>(zp)] = idx;
    }
    SpaceMap tilde(z, fs.space, std::move(graph));
    if (!is_continuous(tilde).continuous)
        throw Falsification("the transpose of a continuous map is not continuous");
    return CurryResult{std::move(tilde), std::move(fs)};
}

SpaceMap uncurry(const SpaceMap& k, const FunctionSpace& fs) {
    require(k.target() == fs.space, Errc::ShapeMismatch,
            "uncurry needs a map into the given function space");
    require(is_continuous(k).continuous, Errc::NotContinuous, "uncurry needs a continuous map");
    const Preconvergence& z = k.source();
    std::vector<Preconvergence> factors{z, fs.source};
    Preconvergence prod = product(factors);
    int xn = fs.source.n();
    std::vector<int> graph(static_cast<size_t>(prod.n()));
    for (int p = 0; p < prod.n(); ++p) {
        int zp = p / xn, xp = p % xn;
        graph[static_cast<size_t>(p)] =
            fs.functions[static_cast<size_t>(k.apply(zp))][static_cast<size_t>(xp)];
    }
    return SpaceMap(prod, fs.target, std::move(graph));
}

bool verify_composition_continuity(const Preconvergence& x, const Preconvergence& y,
                                   const Preconvergence& z) {
    FunctionSpace fxy = continuous_convergence(x, y);
    FunctionSpace fyz = continuous_convergence(y, z);
    FunctionSpace fxz = continuous_convergence(x, z);
    std::vector<Preconvergence> factors{fxy.space, fyz.space};
    Preconvergence prod = product(factors);
    int ny = static_cast<int>(fyz.functions.size());
    std::vector<int> graph(static_cast<size_t>(prod.n()));
    for (int p = 0; p < prod.n(); ++p) {
        const auto& u = fxy.functions[static_cast<size_t>(p / ny)];
        const auto& v = fyz.functions[static_cast<size_t>(p % ny)];
        std::vector<int> comp(static_cast<size_t>(x.n()));
        for (int q = 0; q < x.n(); ++q)
            comp[static_cast<size_t>(q)] = v[static_cast<size_t>(u[static_cast<size_t>(q)])];
        int idx = fxz.function_index(comp);
        if (idx < 0)
            throw Falsification("a composite of continuous maps is not continuous");
        graph[static_cast<size_t>(p)] = idx;
    }
    return is_continuous(SpaceMap(prod, fxz.space, std::move(graph))).continuous;
}

}  // namespace convg
