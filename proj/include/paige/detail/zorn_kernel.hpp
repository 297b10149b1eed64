#ifndef PAIGE_DETAIL_ZORN_KERNEL_HPP
#define PAIGE_DETAIL_ZORN_KERNEL_HPP

namespace paige::detail {

// Component layout of a Zorn vector matrix, fixed everywhere (serialization,
// caches, kernels): [0] = a1, [1..3] = a12, [4..6] = a21, [7] = a2.
//
// The kernels are templated over an arithmetic context Ctx providing
//   T add(T, T); T sub(T, T); T mul(T, T); T neg(T);
// so the multiplication rule is written exactly once and instantiated for
// field-element values and for raw table indices alike.

template <class Ctx, class T>
inline T dot3(const Ctx& F, const T* g, const T* d) {
    return F.add(F.add(F.mul(g[0], d[0]), F.mul(g[1], d[1])), F.mul(g[2], d[2]));
}

template <class Ctx, class T>
inline void cross3(const Ctx& F, const T* g, const T* d, T* out) {
    out[0] = F.sub(F.mul(g[1], d[2]), F.mul(g[2], d[1]));
    out[1] = F.sub(F.mul(g[2], d[0]), F.mul(g[0], d[2]));
    out[2] = F.sub(F.mul(g[0], d[1]), F.mul(g[1], d[0]));
}

// (a1 a12; a21 a2)(b1 b12; b21 b2) =
//   ( a1 b1 + (a12, b21)            a1 b12 + b2 a12 - a21 x b21
//     b1 a21 + a2 b21 + a12 x b12   a2 b2 + (a21, b12) )
// out must not alias a or b.
template <class Ctx, class T>
inline void zorn_mul_kernel(const Ctx& F, const T* a, const T* b, T* out) {
    out[0] = F.add(F.mul(a[0], b[0]), dot3(F, a + 1, b + 4));
    T cr[3];
    cross3(F, a + 4, b + 4, cr);
    for (int i = 0; i < 3; ++i)
        out[1 + i] = F.sub(F.add(F.mul(a[0], b[1 + i]), F.mul(b[7], a[1 + i])), cr[i]);
    cross3(F, a + 1, b + 1, cr);
    for (int i = 0; i < 3; ++i)
        out[4 + i] = F.add(F.add(F.mul(b[0], a[4 + i]), F.mul(a[7], b[4 + i])), cr[i]);
    out[7] = F.add(F.mul(a[7], b[7]), dot3(F, a + 4, b + 1));
}

// n(a) = a1 a2 - (a12, a21)
template <class Ctx, class T>
inline T zorn_norm_kernel(const Ctx& F, const T* a) {
    return F.sub(F.mul(a[0], a[7]), dot3(F, a + 1, a + 4));
}

// conjugate: (a2, -a12; -a21, a1)
template <class Ctx, class T>
inline void zorn_conj_kernel(const Ctx& F, const T* a, T* out) {
    out[0] = a[7];
    for (int i = 1; i <= 6; ++i) out[i] = F.neg(a[i]);
    out[7] = a[0];
}

} // namespace paige::detail

#endif
