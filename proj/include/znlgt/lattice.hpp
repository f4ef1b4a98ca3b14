#pragma once

#include <array>
#include <stdexcept>
#include <string>
#include <vector>

#include "znlgt/zn.hpp"

namespace znlgt {

enum class Boundary { periodic, open };

/// Staggered lattice geometry: dimension, extents, boundary rule and qudit
/// dimension. Periodic boundaries need even extents so the site parity
/// (-1)^{|x|} is single-valued around every cycle.
struct LatticeSpec {
    int dims = 1;
    std::array<int, 2> extent{2, 1}; // extent[1] ignored for dims == 1
    Boundary boundary = Boundary::periodic;
    int levels = 3;

    void validate() const {
        require_prime(levels);
        if (dims != 1 && dims != 2)
            throw std::invalid_argument("lattice dimension must be 1 or 2");
        for (int d = 0; d < dims; ++d) {
            if (extent[static_cast<size_t>(d)] < 2)
                throw std::invalid_argument("lattice extent must be at least 2 per dimension");
            if (boundary == Boundary::periodic && extent[static_cast<size_t>(d)] % 2 != 0)
                throw std::invalid_argument("periodic boundaries require even extent "
                                            "(staggering must close around each cycle)");
        }
    }
};

/**
 * Deterministic site/link/qudit numbering shared by every module and file
 * format. Sites come first in fermionic (row-major) order, f(n) = n_x + n_y Ns;
 * links follow, all x-links before all y-links, each block row-major by the
 * origin site. Logical qudit j of a Gauss code is link j.
 */
struct SiteLinkIndex {
    struct Link {
        int from = 0;            // origin site
        int to = 0;              // target site (wraps under periodic boundaries)
        int dir = 0;             // 0: x, 1: y
        std::vector<int> string_sites; // Jordan-Wigner string support (y-links only)
    };

    LatticeSpec spec;
    int n_sites = 0;
    std::vector<Link> links;
    std::vector<std::vector<int>> out_links; // per site
    std::vector<std::vector<int>> in_links;  // per site

    explicit SiteLinkIndex(const LatticeSpec& s) : spec(s) {
        spec.validate();
        const int nx = spec.extent[0];
        const int ny = spec.dims == 2 ? spec.extent[1] : 1;
        n_sites = nx * ny;
        out_links.resize(static_cast<size_t>(n_sites));
        in_links.resize(static_cast<size_t>(n_sites));

        auto add_link = [&](int from, int to, int dir) {
            Link l;
            l.from = from;
            l.to = to;
            l.dir = dir;
            if (dir == 1) {
                // JW string over the sites strictly between the endpoints in
                // the fermionic order.
                const int lo = std::min(from, to);
                const int hi = std::max(from, to);
                for (int s = lo + 1; s < hi; ++s) l.string_sites.push_back(s);
            }
            const int id = static_cast<int>(links.size());
            links.push_back(std::move(l));
            out_links[static_cast<size_t>(from)].push_back(id);
            in_links[static_cast<size_t>(to)].push_back(id);
        };

        if (spec.dims == 1) {
            const int last = spec.boundary == Boundary::periodic ? nx : nx - 1;
            for (int x = 0; x < last; ++x) add_link(x, (x + 1) % nx, 0);
        } else {
            for (int y = 0; y < ny; ++y)
                for (int x = 0; x < nx; ++x) {
                    if (spec.boundary == Boundary::periodic || x + 1 < nx)
                        add_link(site_id(x, y), site_id((x + 1) % nx, y), 0);
                }
            for (int y = 0; y < ny; ++y)
                for (int x = 0; x < nx; ++x) {
                    if (spec.boundary == Boundary::periodic || y + 1 < ny)
                        add_link(site_id(x, y), site_id(x, (y + 1) % ny), 1);
                }
        }
    }

    int site_id(int x, int y = 0) const { return x + y * spec.extent[0]; }
    int site_x(int s) const { return s % spec.extent[0]; }
    int site_y(int s) const { return s / spec.extent[0]; }

    int n_links() const { return static_cast<int>(links.size()); }
    int n_qudits() const { return n_sites + n_links(); }
    int site_qudit(int s) const { return s; }
    int link_qudit(int l) const { return n_sites + l; }

    /// Link id originating at site s in direction dir, or -1 when absent.
    int link_from(int s, int dir) const {
        for (int id : out_links[static_cast<size_t>(s)])
            if (links[static_cast<size_t>(id)].dir == dir) return id;
        return -1;
    }
};

/// p_x = [1 - (-1)^{|x|}]/2 with |x| the coordinate sum.
inline int staggered_parity(const SiteLinkIndex& idx, int site) {
    return (idx.site_x(site) + idx.site_y(site)) % 2;
}

} // namespace znlgt
