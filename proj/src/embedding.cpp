#include "btg/embedding.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

namespace btg {

double wrap_2pi(double t) {
    t = std::fmod(t, kTwoPi);
    if (t < 0) t += kTwoPi;
    if (t >= kTwoPi) t -= kTwoPi;
    return t;
}

double wrap_pi(double t) {
    t = wrap_2pi(t);
    return t > kPi ? t - kTwoPi : t;
}

SlotPlacement slot_angles(int n) {
    if (n < 2 || n > kMaxStrands)
        throw Error("strand count " + std::to_string(n) + " outside supported range [2, " +
                    std::to_string(kMaxStrands) + "]");
    SlotPlacement out;
    out.n = n;
    for (int j = 0; j < n; ++j) {
        double a = j == n - 1 ? 0.0 : std::ldexp(kPi, -j);
        out.angles.push_back(a);
        out.points.push_back({std::cos(a), std::sin(a)});
    }
    std::vector<double> dirs;
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) {
            Point d = out.points[j] - out.points[i];
            double a = std::atan2(d.y, d.x);
            a = std::fmod(a + kPi, kPi);
            dirs.push_back(a);
        }
    std::sort(dirs.begin(), dirs.end());
    double margin = dirs.size() > 1 ? kPi - (dirs.back() - dirs.front()) : kPi;
    for (std::size_t k = 1; k < dirs.size(); ++k) margin = std::min(margin, dirs[k] - dirs[k - 1]);
    out.slope_margin = margin;
    return out;
}

std::array<CrossingLift, 2> crossing_time(Point p, Point q) {
    Point d = p - q;
    if (std::hypot(d.x, d.y) < kTolerance) throw GenericityError("coincident points have no crossing time");
    // p is over when the rotated difference points along +y
    double t_over = wrap_2pi(kPi / 2 - std::atan2(d.y, d.x));
    double t_under = wrap_2pi(t_over + kPi);
    std::array<CrossingLift, 2> out{CrossingLift{t_over, true}, CrossingLift{t_under, false}};
    if (out[1].t < out[0].t) std::swap(out[0], out[1]);
    return out;
}

namespace {

double point_segment_distance(Point p, Point a, Point b) {
    Point ab = b - a;
    double len2 = dot(ab, ab);
    double k = std::clamp(dot(p - a, ab) / len2, 0.0, 1.0);
    Point c = a + k * ab;
    return std::hypot(p.x - c.x, p.y - c.y);
}

// Distance between segment [a,b] and the full line through p,q.
double segment_line_distance(Point a, Point b, Point p, Point q) {
    Point dir = q - p;
    double len = std::hypot(dir.x, dir.y);
    double da = cross(dir, a - p) / len;
    double db = cross(dir, b - p) / len;
    if ((da > 0) != (db > 0)) return 0.0;
    return std::min(std::abs(da), std::abs(db));
}

// Bump amplitude: a tenth of half the clearance between any exchange
// chord and the rest of the configuration, also kept below the x-gaps so
// that the x-order at t = 0 is preserved during every exchange.
double bump_amplitude(const SlotPlacement& slots) {
    const int n = slots.n;
    const auto& Q = slots.points;
    double clearance = std::numeric_limits<double>::infinity();
    for (int i = 0; i + 1 < n; ++i) {
        Point a = Q[i], b = Q[i + 1];
        clearance = std::min(clearance, std::hypot(b.x - a.x, b.y - a.y));
        for (int j = 0; j < n; ++j) {
            if (j == i || j == i + 1) continue;
            clearance = std::min(clearance, point_segment_distance(Q[j], a, b));
            for (int k = j + 1; k < n; ++k) {
                if (k == i || k == i + 1) continue;
                clearance = std::min(clearance, segment_line_distance(a, b, Q[j], Q[k]));
            }
        }
    }
    for (int i = 0; i + 1 < n; ++i) clearance = std::min(clearance, Q[i + 1].x - Q[i].x);
    return 0.1 * 0.5 * clearance;
}

}  // namespace

StrandPathSet::StrandPathSet(const BraidWord& w)
    : word_(w), n_(w.strands()), slots_(slot_angles(w.strands())), perm_(permutation(w)) {
    delta_ = bump_amplitude(slots_);
    const std::size_t l = w.length();
    occupant_.resize((l + 1) * n_);
    slot_of_.resize((l + 1) * n_);
    std::vector<int> occ(n_);
    std::iota(occ.begin(), occ.end(), 0);
    strand_windows_.assign(n_, {});
    for (std::size_t m = 0; m <= l; ++m) {
        for (int s = 0; s < n_; ++s) {
            occupant_[m * n_ + s] = occ[s];
            slot_of_[m * n_ + occ[s]] = s;
        }
        if (m == l) break;
        const Letter& letter = w[m];
        ExchangeWindow win;
        win.letter = static_cast<int>(m);
        win.slot = letter.index - 1;
        win.sign = letter.sign;
        win.z_begin = (static_cast<double>(m) + 1.0 / 3.0) / static_cast<double>(l);
        win.z_end = (static_cast<double>(m) + 2.0 / 3.0) / static_cast<double>(l);
        win.u_strand = occ[win.slot];
        win.v_strand = occ[win.slot + 1];
        strand_windows_[win.u_strand].push_back(static_cast<int>(m));
        strand_windows_[win.v_strand].push_back(static_cast<int>(m));
        windows_.push_back(win);
        std::swap(occ[win.slot], occ[win.slot + 1]);
    }

    tracks_.assign(static_cast<std::size_t>(n_ * n_), {});
    for (int a = 0; a < n_; ++a)
        for (int b = a + 1; b < n_; ++b) {
            auto& track = tracks_[pair_key(a, b)];
            std::merge(strand_windows_[a].begin(), strand_windows_[a].end(), strand_windows_[b].begin(),
                       strand_windows_[b].end(), std::back_inserter(track.windows));
            track.windows.erase(std::unique(track.windows.begin(), track.windows.end()), track.windows.end());
            double acc = 0;
            for (int wi : track.windows) {
                acc += window_change(a, b, windows_[wi], 0.0, 1.0);
                track.cumulative.push_back(acc);
            }
        }
}

StrandPathSet::Locus StrandPathSet::locate(double z) const {
    Locus at;
    const std::size_t l = length();
    if (l == 0) return at;
    double scaled = z * static_cast<double>(l);
    auto m = static_cast<std::size_t>(std::floor(scaled));
    if (m >= l) m = l - 1;
    at.letter = m;
    double frac = scaled - static_cast<double>(m);
    double s = (frac - 1.0 / 3.0) * 3.0;
    if (s >= 0.0 && s <= 1.0) {
        at.window = static_cast<int>(m);
        at.s = s;
    } else if (s > 1.0) {
        at.letter = m + 1;
    }
    return at;
}

Point StrandPathSet::exchange_midpoint(const ExchangeWindow& w) const {
    const auto& Q = slots_.points;
    return 0.5 * (Q[w.slot] + Q[w.slot + 1]);
}

Point StrandPathSet::exchange_difference(const ExchangeWindow& w, double s) const {
    const auto& Q = slots_.points;
    Point d = Q[w.slot + 1] - Q[w.slot];
    double len = std::hypot(d.x, d.y);
    Point nhat{-d.y / len, d.x / len};
    return (2 * s - 1) * d + (2 * w.sign * delta_ * std::sin(kPi * s)) * nhat;
}

Point StrandPathSet::position(int strand, const Locus& at) const {
    const auto& Q = slots_.points;
    if (at.window < 0) return Q[slot_of(strand, at.letter)];
    const auto& w = windows_[at.window];
    if (strand != w.u_strand && strand != w.v_strand) return Q[slot_of(strand, at.letter)];
    Point half = 0.5 * exchange_difference(w, at.s);
    Point mid = exchange_midpoint(w);
    return strand == w.u_strand ? mid + half : mid - half;
}

Point StrandPathSet::position(int strand, double z) const { return position(strand, locate(z)); }

Point StrandPathSet::velocity(int strand, const Locus& at) const {
    if (at.window < 0) return {0, 0};
    const auto& w = windows_[at.window];
    if (strand != w.u_strand && strand != w.v_strand) return {0, 0};
    const auto& Q = slots_.points;
    Point d = Q[w.slot + 1] - Q[w.slot];
    double len = std::hypot(d.x, d.y);
    Point nhat{-d.y / len, d.x / len};
    Point du = d + (w.sign * delta_ * kPi * std::cos(kPi * at.s)) * nhat;
    return strand == w.u_strand ? du : -1.0 * du;
}

double StrandPathSet::pair_angle(int a, int b, double z) const {
    auto at = locate(z);
    Point d = position(a, at) - position(b, at);
    return std::atan2(d.y, d.x);
}

double StrandPathSet::pair_angle_rate(int a, int b, const Locus& at) const {
    auto lp = at;
    Point d = position(a, lp) - position(b, lp);
    Point dv = velocity(a, lp) - velocity(b, lp);
    return cross(d, dv) / dot(d, d);
}

// Continuous angle of u - v relative to the chord direction: starts at pi,
// sweeps monotonically by sign*pi.
double StrandPathSet::exchange_phase(const ExchangeWindow& w, double s) const {
    const auto& Q = slots_.points;
    Point d = Q[w.slot + 1] - Q[w.slot];
    double len = std::hypot(d.x, d.y);
    double phi = std::atan2(2 * delta_ * std::sin(kPi * s) / len, 2 * s - 1);
    return w.sign * phi;
}

double StrandPathSet::window_change(int a, int b, const ExchangeWindow& w, double s0, double s1) const {
    bool a_moves = a == w.u_strand || a == w.v_strand;
    bool b_moves = b == w.u_strand || b == w.v_strand;
    if (!a_moves && !b_moves) return 0.0;
    if (a_moves && b_moves) return exchange_phase(w, s1) - exchange_phase(w, s0);
    // one moving strand against a stationary one: the swept angle stays below pi
    Locus l0{w.letter, s0, static_cast<std::size_t>(w.letter)};
    Locus l1{w.letter, s1, static_cast<std::size_t>(w.letter)};
    Point d0 = position(a, l0) - position(b, l0);
    Point d1 = position(a, l1) - position(b, l1);
    return wrap_pi(std::atan2(d1.y, d1.x) - std::atan2(d0.y, d0.x));
}

double StrandPathSet::pair_angle_change(int a, int b, double z1, double z2) const {
    if (a == b) throw Error("pair angle of a strand with itself");
    const auto& track = tracks_[pair_key(a, b)];
    auto cumulative_to = [&](double z) {
        // index of first window in the track whose end exceeds z
        auto it = std::upper_bound(track.windows.begin(), track.windows.end(), z,
                                   [&](double value, int wi) { return value < windows_[wi].z_end; });
        auto k = static_cast<std::size_t>(it - track.windows.begin());
        double acc = k > 0 ? track.cumulative[k - 1] : 0.0;
        if (k < track.windows.size()) {
            const auto& w = windows_[track.windows[k]];
            if (z > w.z_begin) {
                double s = std::min(1.0, (z - w.z_begin) / (w.z_end - w.z_begin));
                acc += window_change(a, b, w, 0.0, s);
            }
        }
        return acc;
    };
    return cumulative_to(z2) - cumulative_to(z1);
}

}  // namespace btg
