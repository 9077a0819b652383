// tym_runtime.hpp
//
// Support library for compiled tym programs built outside Octave: a small
// reference-counted, copy-on-write numeric array type plus the entry-point
// harness (argument-file reader, result printer, timing loop).
//
// Single header, no dependencies beyond the C++17 standard library.
//
// Storage is column-major.  Element access comes in a checked flavor
// (checkelem, throws on a bad index) and an unchecked one (xelem).  Integer
// elements are 32-bit with saturating stores: arithmetic happens in
// long long, and values are clamped to the int32 range when stored.
#pragma once

#include <atomic>
#include <cerrno>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <fstream>
#include <limits>
#include <new>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace tym {

// ---------------------------------------------------------------- errors

class tym_error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Soft failure channel used by generated argument guards: the entry-point
// harness checks it after the function returns.  Last message wins so the
// guard's canonical text overrides anything set during extraction.
struct exec_state {
    bool failed = false;
    std::string message;
};

inline exec_state& state() {
    static exec_state s;
    return s;
}

inline void fail(const std::string& msg) {
    state().failed = true;
    state().message = msg;
}

inline bool failed() { return state().failed; }
inline const std::string& fail_message() { return state().message; }
inline void clear_failed() { state() = exec_state{}; }

// ------------------------------------------------------- saturating int32

class int32 {
public:
    int32() = default;
    int32(int v) : v_(v) {}
    int32(long long v) : v_(saturate(v)) {}
    int32(double v) : v_(from_real(v)) {}
    int32(float v) : v_(from_real(static_cast<double>(v))) {}

    int32& operator=(int v) { v_ = v; return *this; }
    int32& operator=(long long v) { v_ = saturate(v); return *this; }
    int32& operator=(double v) { v_ = from_real(v); return *this; }
    int32& operator=(float v) { v_ = from_real(static_cast<double>(v)); return *this; }

    // widening: all arithmetic on elements happens in long long, so a
    // chain of operations cannot overflow before the next store clamps it
    operator long long() const { return v_; }

    std::int32_t value() const { return v_; }

    static std::int32_t saturate(long long v) {
        if (v > 2147483647LL) return 2147483647;
        if (v < -2147483648LL) return -2147483648LL;
        return static_cast<std::int32_t>(v);
    }

    // truncate toward zero, then clamp; NaN maps to 0
    static std::int32_t from_real(double v) {
        if (std::isnan(v)) return 0;
        if (v >= 2147483648.0) return 2147483647;
        if (v <= -2147483649.0) return -2147483648LL;
        return static_cast<std::int32_t>(v);
    }

private:
    std::int32_t v_ = 0;
};

// ------------------------------------------------------------ dimensions

struct dim_vector {
    long long r = 0;
    long long c = 0;

    dim_vector() = default;
    dim_vector(long long rows, long long cols)
        : r(rows < 0 ? 0 : rows), c(cols < 0 ? 0 : cols) {}

    long long numel() const { return r * c; }
};

// -------------------------------------------------------------- selectors

// A single index, a half-open stepped range, or a colon; ranges hold
// {start, start+step, ...} strictly below stop.
class idx_vector {
public:
    enum class kind { scalar, range, colon };

    idx_vector(long long i) : k_(kind::scalar), start_(i) {}
    idx_vector(long long start, long long stop, long long step)
        : k_(kind::range), start_(start), stop_(stop), step_(step) {}
    explicit idx_vector(kind k) : k_(k) {}

    static const idx_vector colon;

    kind which() const { return k_; }

    // materialize against a dimension of extent `dim`, validating bounds
    std::vector<long long> expand(long long dim) const {
        std::vector<long long> out;
        switch (k_) {
        case kind::scalar:
            if (start_ < 0 || start_ >= dim)
                throw tym_error("index (" + std::to_string(start_) +
                                ") out of bounds in slice");
            out.push_back(start_);
            break;
        case kind::range: {
            if (step_ < 1)
                throw tym_error("invalid slice step");
            if (start_ < stop_) {
                // an empty range selects nothing and is never validated;
                // a non-empty one must fit by its first and last members
                long long last = start_ + ((stop_ - 1 - start_) / step_) * step_;
                if (start_ < 0 || last >= dim)
                    throw tym_error("slice (" + std::to_string(start_) + ":" +
                                    std::to_string(stop_ - 1) + ") out of bounds");
                for (long long i = start_; i < stop_; i += step_)
                    out.push_back(i);
            }
            break;
        }
        case kind::colon:
            out.reserve(static_cast<size_t>(dim > 0 ? dim : 0));
            for (long long i = 0; i < dim; ++i)
                out.push_back(i);
            break;
        }
        return out;
    }

private:
    kind k_ = kind::colon;
    long long start_ = 0;
    long long stop_ = 0;
    long long step_ = 1;
};

inline const idx_vector idx_vector::colon{idx_vector::kind::colon};

// ----------------------------------------------------------------- arrays

// Reference-counted, copy-on-write 2-D array.  Handles share a Rep; any
// mutating access detaches (clones) when the Rep is shared.  The count is
// atomic so handles may be handed between threads; a single handle is not
// safe for concurrent mutation.
template <typename T>
class NumArray {
    struct Rep {
        T* data;
        long long len;
        std::atomic<int> count;

        explicit Rep(long long n, bool zero_fill)
            : data(nullptr), len(n), count(1) {
            if (n > 0)
                data = zero_fill ? new T[n]() : new T[n];
        }
        ~Rep() { delete[] data; }
        Rep(const Rep&) = delete;
        Rep& operator=(const Rep&) = delete;
    };

public:
    NumArray() : rep_(new Rep(0, false)) {}

    explicit NumArray(dim_vector d)
        : rep_(new Rep(d.numel(), false)), dims_(d) {}

    NumArray(dim_vector d, T fill) : rep_(new Rep(d.numel(), false)), dims_(d) {
        for (long long i = 0; i < rep_->len; ++i)
            rep_->data[i] = fill;
    }

    NumArray(const NumArray& other) : rep_(other.rep_), dims_(other.dims_) {
        rep_->count.fetch_add(1, std::memory_order_relaxed);
    }

    NumArray(NumArray&& other) noexcept : rep_(other.rep_), dims_(other.dims_) {
        other.rep_ = new Rep(0, false);
        other.dims_ = dim_vector{};
    }

    NumArray& operator=(const NumArray& other) {
        if (this != &other) {
            other.rep_->count.fetch_add(1, std::memory_order_relaxed);
            release();
            rep_ = other.rep_;
            dims_ = other.dims_;
        }
        return *this;
    }

    NumArray& operator=(NumArray&& other) noexcept {
        if (this != &other) {
            release();
            rep_ = other.rep_;
            dims_ = other.dims_;
            other.rep_ = new Rep(0, false);
            other.dims_ = dim_vector{};
        }
        return *this;
    }

    ~NumArray() { release(); }

    int rows() const { return static_cast<int>(dims_.r); }
    int columns() const { return static_cast<int>(dims_.c); }
    long long numel() const { return rep_->len; }

    // test hooks: sharing must be observable to assert the COW contract
    int ref_count() const { return rep_->count.load(std::memory_order_relaxed); }
    const void* rep_id() const { return rep_; }

    // unchecked element access; the caller guarantees the index is valid
    T& xelem(long long i) {
        detach();
        return rep_->data[i];
    }
    T& xelem(long long i, long long j) {
        detach();
        return rep_->data[i + j * dims_.r];
    }
    const T& xelem(long long i) const { return rep_->data[i]; }
    const T& xelem(long long i, long long j) const {
        return rep_->data[i + j * dims_.r];
    }

    // checked element access
    T& checkelem(long long i) {
        check_linear(i);
        return xelem(i);
    }
    T& checkelem(long long i, long long j) {
        check_pair(i, j);
        return xelem(i, j);
    }
    const T& checkelem(long long i) const {
        check_linear(i);
        return xelem(i);
    }
    const T& checkelem(long long i, long long j) const {
        check_pair(i, j);
        return xelem(i, j);
    }

    // benign linear read used by generated argument extraction; never
    // throws so it is safe to run before the argument guards
    T operator()(long long i) const {
        if (i < 0 || i >= rep_->len) {
            fail("argument element out of range");
            return T{};
        }
        return rep_->data[i];
    }

    // gather: fresh array shaped by the selectors, column-major source
    NumArray index(const idx_vector& sel) const {
        std::vector<long long> lin = sel.expand(rep_->len);
        NumArray out(dim_vector(static_cast<long long>(lin.size()), lin.empty() ? 0 : 1));
        for (size_t p = 0; p < lin.size(); ++p)
            out.rep_->data[p] = rep_->data[lin[p]];
        return out;
    }

    NumArray index(const idx_vector& rsel, const idx_vector& csel) const {
        std::vector<long long> ri = rsel.expand(dims_.r);
        std::vector<long long> ci = csel.expand(dims_.c);
        NumArray out(dim_vector(static_cast<long long>(ri.size()),
                                static_cast<long long>(ci.size())));
        long long p = 0;
        for (size_t q = 0; q < ci.size(); ++q)
            for (size_t s = 0; s < ri.size(); ++s)
                out.rep_->data[p++] = rep_->data[ri[s] + ci[q] * dims_.r];
        return out;
    }

    // scatter: overwrite the selected positions from src; src must match
    // the selected shape, or be 1x1 (broadcast)
    void assign(const idx_vector& sel, const NumArray& src) {
        std::vector<long long> lin = sel.expand(rep_->len);
        long long n = static_cast<long long>(lin.size());
        bool bcast = src.numel() == 1 && n != 1;
        if (!bcast && src.numel() != n)
            throw tym_error("nonconformant arguments");
        detach();
        for (long long p = 0; p < n; ++p)
            rep_->data[lin[p]] = src.rep_->data[bcast ? 0 : p];
    }

    void assign(const idx_vector& rsel, const idx_vector& csel, const NumArray& src) {
        std::vector<long long> ri = rsel.expand(dims_.r);
        std::vector<long long> ci = csel.expand(dims_.c);
        long long nr = static_cast<long long>(ri.size());
        long long nc = static_cast<long long>(ci.size());
        bool bcast = src.numel() == 1 && nr * nc != 1;
        if (!bcast && (src.dims_.r != nr || src.dims_.c != nc))
            throw tym_error("nonconformant arguments");
        detach();
        for (long long q = 0; q < nc; ++q)
            for (long long s = 0; s < nr; ++s)
                rep_->data[ri[s] + ci[q] * dims_.r] =
                    src.rep_->data[bcast ? 0 : s + q * nr];
    }

    // copy src into the top-left corner, leaving the rest untouched; the
    // non-binding form of whole-array assignment
    void place(const NumArray& src) {
        if (src.dims_.r > dims_.r || src.dims_.c > dims_.c)
            throw tym_error("nonconformant arguments");
        detach();
        for (long long q = 0; q < src.dims_.c; ++q)
            for (long long s = 0; s < src.dims_.r; ++s)
                rep_->data[s + q * dims_.r] = src.rep_->data[s + q * src.dims_.r];
    }

    // library-only shape tools (no surface syntax reaches these)
    void reshape(long long r, long long c) {
        dim_vector d(r, c);
        if (d.numel() != rep_->len)
            throw tym_error("reshape: element count mismatch");
        dims_ = d;
    }

    void resize(long long r, long long c) {
        dim_vector d(r, c);
        NumArray out(d, T{});
        long long cr = dims_.r < d.r ? dims_.r : d.r;
        long long cc = dims_.c < d.c ? dims_.c : d.c;
        for (long long q = 0; q < cc; ++q)
            for (long long s = 0; s < cr; ++s)
                out.rep_->data[s + q * d.r] = rep_->data[s + q * dims_.r];
        *this = out;
    }

private:
    void release() {
        if (rep_->count.fetch_sub(1, std::memory_order_acq_rel) == 1)
            delete rep_;
    }

    void detach() {
        if (rep_->count.load(std::memory_order_relaxed) == 1)
            return;
        Rep* fresh = new Rep(rep_->len, false);
        for (long long i = 0; i < rep_->len; ++i)
            fresh->data[i] = rep_->data[i];
        release();
        rep_ = fresh;
    }

    void check_linear(long long i) const {
        if (i < 0 || i >= rep_->len)
            throw tym_error("index (" + std::to_string(i) + ") out of bounds");
    }

    void check_pair(long long i, long long j) const {
        if (i < 0 || i >= dims_.r || j < 0 || j >= dims_.c)
            throw tym_error("index (" + std::to_string(i) + ", " +
                            std::to_string(j) + ") out of bounds");
    }

    Rep* rep_;
    dim_vector dims_;
};

using int_array = NumArray<int32>;
using real_array = NumArray<double>;

// ------------------------------------------------------ elementwise math

enum class ew_op { add, sub, mul, div };

inline long long ew_int(long long a, long long b, ew_op op) {
    switch (op) {
    case ew_op::add: return a + b;
    case ew_op::sub: return a - b;
    case ew_op::mul: return a * b;
    case ew_op::div:
        if (b == 0)
            throw tym_error("division by zero");
        return a / b; // truncates toward zero
    }
    return 0;
}

inline double ew_real(double a, double b, ew_op op) {
    switch (op) {
    case ew_op::add: return a + b;
    case ew_op::sub: return a - b;
    case ew_op::mul: return a * b;
    case ew_op::div: return a / b; // IEEE: inf / nan on zero divisor
    }
    return 0.0;
}

namespace detail {

// dims for a binary op with 1x1 broadcast on either side
template <typename A, typename B>
dim_vector ew_dims(const A& a, const B& b) {
    if (a.rows() == b.rows() && a.columns() == b.columns())
        return dim_vector(a.rows(), a.columns());
    if (a.numel() == 1)
        return dim_vector(b.rows(), b.columns());
    if (b.numel() == 1)
        return dim_vector(a.rows(), a.columns());
    throw tym_error("nonconformant arguments");
}

} // namespace detail

inline int_array ew_arrays(const int_array& a, const int_array& b, ew_op op) {
    dim_vector d = detail::ew_dims(a, b);
    int_array out(d);
    bool ba = a.numel() == 1, bb = b.numel() == 1;
    for (long long i = 0; i < d.numel(); ++i)
        out.xelem(i) = ew_int(a.xelem(ba ? 0 : i), b.xelem(bb ? 0 : i), op);
    return out;
}

inline real_array ew_arrays(const real_array& a, const real_array& b, ew_op op) {
    dim_vector d = detail::ew_dims(a, b);
    real_array out(d);
    bool ba = a.numel() == 1, bb = b.numel() == 1;
    for (long long i = 0; i < d.numel(); ++i)
        out.xelem(i) = ew_real(a.xelem(ba ? 0 : i), b.xelem(bb ? 0 : i), op);
    return out;
}

inline int_array ew_scalar(const int_array& a, long long s, ew_op op, bool scalar_left) {
    int_array out(dim_vector(a.rows(), a.columns()));
    for (long long i = 0; i < a.numel(); ++i)
        out.xelem(i) = scalar_left ? ew_int(s, a.xelem(i), op)
                                   : ew_int(a.xelem(i), s, op);
    return out;
}

inline real_array ew_scalar(const int_array& a, double s, ew_op op, bool scalar_left) {
    real_array out(dim_vector(a.rows(), a.columns()));
    for (long long i = 0; i < a.numel(); ++i) {
        double e = static_cast<double>(static_cast<long long>(a.xelem(i)));
        out.xelem(i) = scalar_left ? ew_real(s, e, op) : ew_real(e, s, op);
    }
    return out;
}

inline real_array ew_scalar(const real_array& a, double s, ew_op op, bool scalar_left) {
    real_array out(dim_vector(a.rows(), a.columns()));
    for (long long i = 0; i < a.numel(); ++i)
        out.xelem(i) = scalar_left ? ew_real(s, a.xelem(i), op)
                                   : ew_real(a.xelem(i), s, op);
    return out;
}

#define TYM_EW_OPERATORS(SYM, OP)                                                        \
    inline int_array operator SYM(const int_array& a, const int_array& b) {              \
        return ew_arrays(a, b, OP);                                                      \
    }                                                                                    \
    inline real_array operator SYM(const real_array& a, const real_array& b) {           \
        return ew_arrays(a, b, OP);                                                      \
    }                                                                                    \
    inline int_array operator SYM(const int_array& a, long long s) {                     \
        return ew_scalar(a, s, OP, false);                                               \
    }                                                                                    \
    inline int_array operator SYM(long long s, const int_array& a) {                     \
        return ew_scalar(a, s, OP, true);                                                \
    }                                                                                    \
    inline int_array operator SYM(const int_array& a, int s) {                           \
        return ew_scalar(a, static_cast<long long>(s), OP, false);                       \
    }                                                                                    \
    inline int_array operator SYM(int s, const int_array& a) {                           \
        return ew_scalar(a, static_cast<long long>(s), OP, true);                        \
    }                                                                                    \
    inline real_array operator SYM(const int_array& a, double s) {                       \
        return ew_scalar(a, s, OP, false);                                               \
    }                                                                                    \
    inline real_array operator SYM(double s, const int_array& a) {                       \
        return ew_scalar(a, s, OP, true);                                                \
    }                                                                                    \
    inline real_array operator SYM(const real_array& a, double s) {                      \
        return ew_scalar(a, s, OP, false);                                               \
    }                                                                                    \
    inline real_array operator SYM(double s, const real_array& a) {                      \
        return ew_scalar(a, s, OP, true);                                                \
    }                                                                                    \
    inline real_array operator SYM(const real_array& a, int s) {                         \
        return ew_scalar(a, static_cast<double>(s), OP, false);                          \
    }                                                                                    \
    inline real_array operator SYM(int s, const real_array& a) {                         \
        return ew_scalar(a, static_cast<double>(s), OP, true);                           \
    }                                                                                    \
    inline real_array operator SYM(const real_array& a, long long s) {                   \
        return ew_scalar(a, static_cast<double>(s), OP, false);                          \
    }                                                                                    \
    inline real_array operator SYM(long long s, const real_array& a) {                   \
        return ew_scalar(a, static_cast<double>(s), OP, true);                           \
    }

TYM_EW_OPERATORS(+, ew_op::add)
TYM_EW_OPERATORS(-, ew_op::sub)
TYM_EW_OPERATORS(*, ew_op::mul)
TYM_EW_OPERATORS(/, ew_op::div)
#undef TYM_EW_OPERATORS

inline int_array operator-(const int_array& a) {
    int_array out(dim_vector(a.rows(), a.columns()));
    for (long long i = 0; i < a.numel(); ++i)
        out.xelem(i) = -static_cast<long long>(a.xelem(i));
    return out;
}

inline real_array operator-(const real_array& a) {
    real_array out(dim_vector(a.rows(), a.columns()));
    for (long long i = 0; i < a.numel(); ++i)
        out.xelem(i) = -a.xelem(i);
    return out;
}

// --------------------------------------------------------------- values

inline std::string format_real(double v) {
    if (std::isnan(v))
        return "nan"; // never "-nan": the printed text is platform-neutral
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

// One function argument or return value: a scalar or an array, tagged so
// scalars print without the array header.
class value {
public:
    value() = default;
    value(int v) : tag_(kind::int_scalar), i_(v) {}
    value(long long v) : tag_(kind::int_scalar), i_(v) {}
    value(int32 v) : tag_(kind::int_scalar), i_(static_cast<long long>(v)) {}
    value(double v) : tag_(kind::real_scalar), r_(v) {}
    value(float v) : tag_(kind::real_scalar), r_(static_cast<double>(v)) {}
    value(int_array a) : tag_(kind::int_arr), ia_(std::move(a)) {}
    value(real_array a) : tag_(kind::real_arr), ra_(std::move(a)) {}

    bool is_empty() const { return tag_ == kind::empty; }

    // extraction used by generated parameter unpacking; never throws, it
    // reports problems through the soft failure channel so the generated
    // type guard can replace the message with its canonical one
    int_array int32_array_value() const {
        switch (tag_) {
        case kind::int_arr:
            return ia_;
        case kind::int_scalar: {
            int_array a(dim_vector(1, 1));
            a.xelem(0) = i_;
            return a;
        }
        default:
            fail("argument is not an integer value");
            return int_array();
        }
    }

    real_array array_value() const {
        switch (tag_) {
        case kind::real_arr:
            return ra_;
        case kind::real_scalar: {
            real_array a(dim_vector(1, 1));
            a.xelem(0) = r_;
            return a;
        }
        case kind::int_scalar: {
            real_array a(dim_vector(1, 1));
            a.xelem(0) = static_cast<double>(i_);
            return a;
        }
        case kind::int_arr: {
            real_array a(dim_vector(ia_.rows(), ia_.columns()));
            for (long long i = 0; i < ia_.numel(); ++i)
                a.xelem(i) = static_cast<double>(static_cast<long long>(ia_.xelem(i)));
            return a;
        }
        default:
            fail("argument is not a numeric value");
            return real_array();
        }
    }

    // float parameters are narrowed by the declaration that receives them
    real_array float_array_value() const { return array_value(); }

    std::string formatted() const {
        switch (tag_) {
        case kind::int_scalar:
            return std::to_string(i_) + "\n";
        case kind::real_scalar:
            return format_real(r_) + "\n";
        case kind::int_arr:
            return format_array(ia_, [](int32 v) {
                return std::to_string(static_cast<long long>(v));
            });
        case kind::real_arr:
            return format_array(ra_, [](double v) { return format_real(v); });
        case kind::empty:
            return "";
        }
        return "";
    }

private:
    enum class kind { empty, int_scalar, real_scalar, int_arr, real_arr };

    template <typename A, typename F>
    static std::string format_array(const A& a, F fmt) {
        std::string out = "array " + std::to_string(a.rows()) + " " +
                          std::to_string(a.columns()) + "\n";
        for (int r = 0; r < a.rows(); ++r) {
            for (int c = 0; c < a.columns(); ++c) {
                if (c)
                    out += " ";
                out += fmt(a.xelem(r, c));
            }
            out += "\n";
        }
        return out;
    }

    kind tag_ = kind::empty;
    long long i_ = 0;
    double r_ = 0.0;
    int_array ia_;
    real_array ra_;
};

class value_list {
public:
    int length() const { return static_cast<int>(v_.size()); }

    // reading off the end is benign (the generated count guard reports it)
    value operator()(int i) const {
        if (i < 0 || i >= length()) {
            fail("argument index out of range");
            return value();
        }
        return v_[static_cast<size_t>(i)];
    }

    value& operator()(int i) {
        if (i >= length())
            v_.resize(static_cast<size_t>(i) + 1);
        return v_[static_cast<size_t>(i)];
    }

    void append(value v) { v_.push_back(std::move(v)); }

private:
    std::vector<value> v_;
};

// ------------------------------------------------------ argument files

// Text format, one argument per block:
//     int <v> | real <v>
//     intarray <rows> <cols> | realarray <rows> <cols>   then <rows> lines
//     of <cols> space-separated elements (row-major in the text)
// '#' lines and blank lines are skipped.

namespace detail {

inline std::vector<std::string> tokens_of(const std::string& line) {
    std::vector<std::string> out;
    std::istringstream in(line);
    std::string tok;
    while (in >> tok)
        out.push_back(tok);
    return out;
}

inline long long parse_int_token(const std::string& tok) {
    errno = 0;
    char* end = nullptr;
    long long v = std::strtoll(tok.c_str(), &end, 10);
    if (end == tok.c_str() || *end != '\0')
        throw tym_error("bad int value: " + tok);
    if (errno == ERANGE)
        v = (tok[0] == '-') ? std::numeric_limits<long long>::min()
                            : std::numeric_limits<long long>::max();
    return v;
}

inline double parse_real_token(const std::string& tok) {
    char* end = nullptr;
    double v = std::strtod(tok.c_str(), &end);
    if (end == tok.c_str() || *end != '\0')
        throw tym_error("bad real value: " + tok);
    return v;
}

} // namespace detail

inline value_list parse_args_text(const std::string& text) {
    std::vector<std::string> lines;
    {
        std::istringstream in(text);
        std::string line;
        while (std::getline(in, line)) {
            size_t a = line.find_first_not_of(" \t\r");
            if (a == std::string::npos)
                continue;
            size_t b = line.find_last_not_of(" \t\r");
            line = line.substr(a, b - a + 1);
            if (line[0] == '#')
                continue;
            lines.push_back(line);
        }
    }

    value_list out;
    size_t pos = 0;
    auto next_line = [&]() -> std::string {
        if (pos >= lines.size())
            throw tym_error("args: unexpected end of file");
        return lines[pos++];
    };

    while (pos < lines.size()) {
        std::vector<std::string> parts = detail::tokens_of(next_line());
        const std::string& kind = parts[0];
        if (kind == "int") {
            if (parts.size() != 2)
                throw tym_error("args: malformed int block");
            out.append(value(int32(detail::parse_int_token(parts[1]))));
        } else if (kind == "real") {
            if (parts.size() != 2)
                throw tym_error("args: malformed real block");
            out.append(value(detail::parse_real_token(parts[1])));
        } else if (kind == "intarray" || kind == "realarray") {
            if (parts.size() != 3)
                throw tym_error("args: malformed array header");
            long long rows = detail::parse_int_token(parts[1]);
            long long cols = detail::parse_int_token(parts[2]);
            if (rows < 0 || cols < 0)
                throw tym_error("args: negative array dimensions");
            bool is_int = kind == "intarray";
            int_array ia;
            real_array ra;
            if (is_int)
                ia = int_array(dim_vector(rows, cols));
            else
                ra = real_array(dim_vector(rows, cols));
            for (long long r = 0; r < rows; ++r) {
                std::vector<std::string> cells = detail::tokens_of(next_line());
                if (static_cast<long long>(cells.size()) != cols)
                    throw tym_error("args: wrong number of values in array row");
                for (long long c = 0; c < cols; ++c) {
                    if (is_int)
                        ia.xelem(r, c) = detail::parse_int_token(cells[c]);
                    else
                        ra.xelem(r, c) = detail::parse_real_token(cells[c]);
                }
            }
            if (is_int)
                out.append(value(ia));
            else
                out.append(value(ra));
        } else {
            throw tym_error("args: unknown argument kind: " + kind);
        }
    }
    return out;
}

inline value_list parse_args_file(const std::string& path) {
    std::ifstream in(path);
    if (!in)
        throw tym_error("cannot open args file: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_args_text(buf.str());
}

// ----------------------------------------------------------- entry point

// Protocol shared with the reference implementation: the result value on
// stdout, `error: <message>` on stderr with exit 2 when the program stops
// early.  An optional second argument repeats the call, timing each run
// and writing `time <seconds>` lines to stderr for the benchmark harness.
inline int run_main(int argc, char** argv,
                    value_list (*fn)(const value_list&)) {
    try {
        value_list args;
        if (argc >= 2)
            args = parse_args_file(argv[1]);
        long long repeats = 0;
        if (argc >= 3) {
            repeats = detail::parse_int_token(argv[2]);
            if (repeats < 1)
                throw tym_error("repeat count must be >= 1");
        }

        value_list retval;
        if (repeats > 0) {
            for (long long r = 0; r < repeats; ++r) {
                clear_failed();
                auto t0 = std::chrono::steady_clock::now();
                retval = fn(args);
                auto t1 = std::chrono::steady_clock::now();
                double secs = std::chrono::duration<double>(t1 - t0).count();
                std::fprintf(stderr, "time %.9f\n", secs);
            }
        } else {
            retval = fn(args);
        }

        if (failed()) {
            std::fprintf(stderr, "error: %s\n", fail_message().c_str());
            return 2;
        }
        const value_list& result = retval;
        std::fputs(result(0).formatted().c_str(), stdout);
        return 0;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 2;
    }
}

} // namespace tym

// Generated translation units use these to declare the compiled function
// and the executable entry point.
#define TYM_DEFUN(name) tym::value_list name(const tym::value_list& args)
#define TYM_MAIN(name)                                                         \
    int main(int argc, char** argv) { return tym::run_main(argc, argv, &name); }
