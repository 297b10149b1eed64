#include "paige/zorn.hpp"

#include <sstream>

#include "paige/detail/zorn_kernel.hpp"

namespace paige {

namespace {

// arithmetic context over FieldElem values
struct ElemArith {
    const Field* f;
    FieldElem add(const FieldElem& a, const FieldElem& b) const { return f->add(a, b); }
    FieldElem sub(const FieldElem& a, const FieldElem& b) const { return f->sub(a, b); }
    FieldElem mul(const FieldElem& a, const FieldElem& b) const { return f->mul(a, b); }
    FieldElem neg(const FieldElem& a) const { return f->neg(a); }
};

void require_same_field(const ZornMatrix& a, const ZornMatrix& b) {
    if (!a.field().same_instance(b.field()) && a.field() != b.field())
        throw value_error("Zorn matrices over different fields");
}

void flatten(const ZornMatrix& a, FieldElem* out) {
    out[0] = a.a1();
    out[1] = a.a12().c1;
    out[2] = a.a12().c2;
    out[3] = a.a12().c3;
    out[4] = a.a21().c1;
    out[5] = a.a21().c2;
    out[6] = a.a21().c3;
    out[7] = a.a2();
}

ZornMatrix unflatten(const Field& f, const FieldElem* t) {
    return ZornMatrix(f, t[0], Vec3{t[1], t[2], t[3]}, Vec3{t[4], t[5], t[6]}, t[7]);
}

} // namespace

std::array<std::uint64_t, 8> ZornMatrix::serialize() const {
    FieldElem t[8];
    flatten(*this, t);
    std::array<std::uint64_t, 8> out{};
    for (int i = 0; i < 8; ++i) out[i] = t[i].index();
    return out;
}

Vec3 zero_vec(const Field& f) { return Vec3{f.zero(), f.zero(), f.zero()}; }

Vec3 basis_vec(const Field& f, int i) {
    Vec3 v = zero_vec(f);
    switch (i) {
    case 1: v.c1 = f.one(); break;
    case 2: v.c2 = f.one(); break;
    case 3: v.c3 = f.one(); break;
    default: throw value_error("basis index must be 1, 2 or 3");
    }
    return v;
}

ZornMatrix zorn_identity(const Field& f) {
    return ZornMatrix(f, f.one(), zero_vec(f), zero_vec(f), f.one());
}

ZornMatrix zorn_zero(const Field& f) {
    return ZornMatrix(f, f.zero(), zero_vec(f), zero_vec(f), f.zero());
}

ZornMatrix zorn_diag(const Field& f, const FieldElem& a, const FieldElem& b) {
    return ZornMatrix(f, a, zero_vec(f), zero_vec(f), b);
}

ZornMatrix zorn_from_tuple(const Field& f, const std::array<std::uint64_t, 8>& t) {
    FieldElem e[8];
    for (int i = 0; i < 8; ++i) e[i] = f.from_index(t[i]);
    return unflatten(f, e);
}

FieldElem dot(const Field& f, const Vec3& g, const Vec3& d) {
    const FieldElem a[3] = {g.c1, g.c2, g.c3};
    const FieldElem b[3] = {d.c1, d.c2, d.c3};
    return detail::dot3(ElemArith{&f}, a, b);
}

Vec3 cross(const Field& f, const Vec3& g, const Vec3& d) {
    const FieldElem a[3] = {g.c1, g.c2, g.c3};
    const FieldElem b[3] = {d.c1, d.c2, d.c3};
    FieldElem out[3];
    detail::cross3(ElemArith{&f}, a, b, out);
    return Vec3{out[0], out[1], out[2]};
}

ZornMatrix zorn_add(const ZornMatrix& a, const ZornMatrix& b) {
    require_same_field(a, b);
    const Field& f = a.field();
    FieldElem ta[8], tb[8], out[8];
    flatten(a, ta);
    flatten(b, tb);
    for (int i = 0; i < 8; ++i) out[i] = f.add(ta[i], tb[i]);
    return unflatten(f, out);
}

ZornMatrix zorn_sub(const ZornMatrix& a, const ZornMatrix& b) {
    require_same_field(a, b);
    const Field& f = a.field();
    FieldElem ta[8], tb[8], out[8];
    flatten(a, ta);
    flatten(b, tb);
    for (int i = 0; i < 8; ++i) out[i] = f.sub(ta[i], tb[i]);
    return unflatten(f, out);
}

ZornMatrix scalar_mul(const FieldElem& c, const ZornMatrix& a) {
    const Field& f = a.field();
    FieldElem t[8];
    flatten(a, t);
    for (auto& v : t) v = f.mul(c, v);
    return unflatten(f, t);
}

ZornMatrix zorn_neg(const ZornMatrix& a) {
    const Field& f = a.field();
    FieldElem t[8];
    flatten(a, t);
    for (auto& v : t) v = f.neg(v);
    return unflatten(f, t);
}

ZornMatrix zorn_mul(const ZornMatrix& a, const ZornMatrix& b) {
    require_same_field(a, b);
    const Field& f = a.field();
    FieldElem ta[8], tb[8], out[8];
    flatten(a, ta);
    flatten(b, tb);
    detail::zorn_mul_kernel(ElemArith{&f}, ta, tb, out);
    return unflatten(f, out);
}

FieldElem norm(const ZornMatrix& a) {
    const Field& f = a.field();
    FieldElem t[8];
    flatten(a, t);
    return detail::zorn_norm_kernel(ElemArith{&f}, t);
}

ZornMatrix conjugate(const ZornMatrix& a) {
    const Field& f = a.field();
    FieldElem t[8], out[8];
    flatten(a, t);
    detail::zorn_conj_kernel(ElemArith{&f}, t, out);
    return unflatten(f, out);
}

ZornMatrix zorn_inverse(const ZornMatrix& a) {
    const Field& f = a.field();
    const FieldElem n = norm(a);
    if (n == f.zero()) throw value_error("Zorn matrix with zero norm is not invertible");
    return scalar_mul(f.inv(n), conjugate(a));
}

ZornMatrix alg_associator(const ZornMatrix& a, const ZornMatrix& b, const ZornMatrix& c) {
    require_same_field(a, b);
    require_same_field(b, c);
    return zorn_sub(zorn_mul(zorn_mul(a, b), c), zorn_mul(a, zorn_mul(b, c)));
}

std::string to_string(const ZornMatrix& a) {
    const Field& f = a.field();
    auto elem = [&](const FieldElem& e) {
        return f.is_rational_field() ? e.rational().str() : std::to_string(e.index());
    };
    std::ostringstream os;
    os << "(" << elem(a.a1()) << ", [" << elem(a.a12().c1) << "," << elem(a.a12().c2) << ","
       << elem(a.a12().c3) << "]; [" << elem(a.a21().c1) << "," << elem(a.a21().c2) << ","
       << elem(a.a21().c3) << "], " << elem(a.a2()) << ")";
    return os.str();
}

} // namespace paige
