// Unit and property tests for the array runtime.
//
// The randomized sections pin their seeds so failures reproduce; the index
// and assign checks compare against naive double-loop oracles computed
// right here in the test.
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "tym_runtime.hpp"

#include <algorithm>
#include <random>
#include <vector>

using tym::dim_vector;
using tym::idx_vector;
using tym::int32;
using tym::int_array;
using tym::real_array;
using tym::tym_error;
using tym::value;
using tym::value_list;

namespace {

int_array iota3x3() {
    // column-major 1..9: columns are (1,2,3), (4,5,6), (7,8,9)
    int_array a(dim_vector(3, 3));
    for (long long i = 0; i < 9; ++i)
        a.xelem(i) = i + 1;
    return a;
}

long long at(const int_array& a, int r, int c) {
    return static_cast<long long>(a.xelem(r, c));
}

long long sum(const int_array& a) {
    long long s = 0;
    for (long long i = 0; i < a.numel(); ++i)
        s += static_cast<long long>(a.xelem(i));
    return s;
}

} // namespace

TEST_CASE("saturating int32 construction and stores") {
    CHECK(int32(5).value() == 5);
    CHECK(int32(2147483647LL).value() == 2147483647);
    CHECK(int32(2147483648LL).value() == 2147483647);
    CHECK(int32(9999999999LL).value() == 2147483647);
    CHECK(int32(-2147483649LL).value() == -2147483648LL);

    // from reals: truncate toward zero, then clamp; NaN maps to 0
    CHECK(int32(2.9).value() == 2);
    CHECK(int32(-2.9).value() == -2);
    CHECK(int32(0.0 / 0.0).value() == 0);
    CHECK(int32(1e300).value() == 2147483647);
    CHECK(int32(-1e300).value() == -2147483648LL);
    CHECK(int32(2147483647.9).value() == 2147483647);

    int32 x;
    x = 2147483000LL + 1000LL;
    CHECK(x.value() == 2147483647);
    x = -2147483000LL - 1000LL;
    CHECK(x.value() == -2147483648LL);

    // arithmetic widens to long long before the next saturating store
    int32 a(100000), b(100000);
    int32 c;
    c = static_cast<long long>(a) * static_cast<long long>(b);
    CHECK(c.value() == 2147483647);
    c = a + b; // operator long long on both sides
    CHECK(c.value() == 200000);
}

TEST_CASE("construction, zero fill, empty arrays") {
    int_array z(dim_vector(2, 3), int32(0));
    CHECK(z.rows() == 2);
    CHECK(z.columns() == 3);
    CHECK(z.numel() == 6);
    CHECK(z.ref_count() == 1);
    for (long long i = 0; i < 6; ++i)
        CHECK(static_cast<long long>(z.xelem(i)) == 0);

    int_array e(dim_vector(0, 5));
    CHECK(e.numel() == 0);
    CHECK(e.rows() == 0);
    CHECK(e.columns() == 5);

    // negative requested dimensions clamp to empty
    real_array n(dim_vector(-3, 4));
    CHECK(n.numel() == 0);
    CHECK(n.rows() == 0);
}

TEST_CASE("element access is column-major") {
    int_array a = iota3x3();
    CHECK(at(a, 1, 1) == 5); // offset i + j*rows = 1 + 3 = 4 -> value 5
    CHECK(at(a, 0, 2) == 7);
    CHECK(static_cast<long long>(a.checkelem(2, 0)) == 3);
    CHECK(static_cast<long long>(a.checkelem(4)) == 5); // linear
}

TEST_CASE("checked access throws on bad indices, unchecked trusts caller") {
    int_array a = iota3x3();
    CHECK_THROWS_AS(a.checkelem(3, 0), tym_error);
    CHECK_THROWS_AS(a.checkelem(0, 3), tym_error);
    CHECK_THROWS_AS(a.checkelem(-1, 0), tym_error);
    CHECK_THROWS_AS(a.checkelem(9), tym_error);
    CHECK_NOTHROW(a.checkelem(2, 2));
}

TEST_CASE("copy-on-write: stores through one handle never show through another") {
    int_array a = iota3x3();
    int_array b = a;
    CHECK(a.ref_count() == 2);
    CHECK(b.ref_count() == 2);
    CHECK(a.rep_id() == b.rep_id());

    b.xelem(0, 0) = 99;
    CHECK(at(a, 0, 0) == 1);
    CHECK(at(b, 0, 0) == 99);
    CHECK(a.ref_count() == 1);
    CHECK(b.ref_count() == 1);
    CHECK(a.rep_id() != b.rep_id());
}

TEST_CASE("refcount conservation over randomized handle operations") {
    std::mt19937 rng(20240901);
    std::vector<int_array> pool;
    pool.push_back(iota3x3());

    auto verify = [&]() {
        for (const int_array& h : pool) {
            int peers = 0;
            for (const int_array& other : pool)
                if (other.rep_id() == h.rep_id())
                    ++peers;
            REQUIRE(h.ref_count() == peers);
        }
    };

    for (int step = 0; step < 400; ++step) {
        size_t i = rng() % pool.size();
        switch (rng() % 4) {
        case 0:
            pool.push_back(pool[i]);
            break;
        case 1:
            if (pool.size() > 1)
                pool.erase(pool.begin() + static_cast<long>(i));
            break;
        case 2:
            pool[i].xelem(rng() % 9) = static_cast<long long>(rng() % 1000);
            break;
        case 3:
            pool[i] = pool[rng() % pool.size()];
            break;
        }
        verify();
    }
}

TEST_CASE("index: ranges, colon, scalars") {
    int_array a = iota3x3();

    int_array tl = a.index(idx_vector(0, 2, 1), idx_vector(0, 2, 1));
    CHECK(tl.rows() == 2);
    CHECK(tl.columns() == 2);
    CHECK(at(tl, 0, 0) == 1);
    CHECK(at(tl, 0, 1) == 4);
    CHECK(at(tl, 1, 0) == 2);
    CHECK(at(tl, 1, 1) == 5);

    int_array col = a.index(idx_vector::colon, idx_vector(0));
    CHECK(col.rows() == 3);
    CHECK(col.columns() == 1);
    CHECK(at(col, 0, 0) == 1);
    CHECK(at(col, 2, 0) == 3);

    // block from a 5x7, shape (4, 5)
    int_array big(dim_vector(5, 7));
    for (long long i = 0; i < big.numel(); ++i)
        big.xelem(i) = i;
    int_array blk = big.index(idx_vector(0, 4, 1), idx_vector(1, 6, 1));
    CHECK(blk.rows() == 4);
    CHECK(blk.columns() == 5);
    CHECK(at(blk, 0, 0) == at(big, 0, 1));
    CHECK(at(blk, 3, 4) == at(big, 3, 5));

    // linear selection flattens column-major into a column
    int_array lin = a.index(idx_vector(1, 4, 1));
    CHECK(lin.rows() == 3);
    CHECK(lin.columns() == 1);
    CHECK(at(lin, 0, 0) == 2);
    CHECK(at(lin, 2, 0) == 4);

    CHECK_THROWS_AS(a.index(idx_vector(0, 4, 1), idx_vector::colon), tym_error);
    CHECK_THROWS_AS(a.index(idx_vector(3), idx_vector(0)), tym_error);
}

TEST_CASE("stepped range bounds are judged by the last selected index") {
    int_array wide(dim_vector(1, 5));
    for (long long i = 0; i < 5; ++i)
        wide.xelem(i) = i * 10;
    // start 0, stop-exclusive 6, step 2 selects {0, 2, 4}: all in bounds
    int_array got = wide.index(idx_vector(0), idx_vector(0, 6, 2));
    CHECK(got.columns() == 3);
    CHECK(at(got, 0, 2) == 40);
    // same stop with step 1 would select index 5 and must throw
    CHECK_THROWS_AS(wide.index(idx_vector(0), idx_vector(0, 6, 1)), tym_error);
    // empty range selects nothing and is never validated
    int_array none = wide.index(idx_vector(0), idx_vector(4, 2, 1));
    CHECK(none.numel() == 0);
}

TEST_CASE("invalid slice step") {
    int_array a = iota3x3();
    CHECK_THROWS_WITH_AS(a.index(idx_vector(0, 2, 0), idx_vector::colon),
                         "invalid slice step", tym_error);
}

TEST_CASE("assign: block, scalar, broadcast, duality") {
    int_array a(dim_vector(4, 3), int32(0));
    int_array b(dim_vector(3, 3), int32(0));
    for (long long i = 0; i < 9; ++i)
        b.xelem(i) = i + 1;

    // rows 0..2, every column
    a.assign(idx_vector(0, 3, 1), idx_vector::colon, b);
    CHECK(at(a, 0, 0) == 1);
    CHECK(at(a, 2, 2) == 9);
    CHECK(at(a, 3, 0) == 0);

    // single element through a scalar selector pair
    int_array one(dim_vector(1, 1), int32(42));
    a.assign(idx_vector(3), idx_vector(0), one);
    CHECK(at(a, 3, 0) == 42);

    // zeros(3,3) with ones(2,2) written into the top corner sums to 4
    int_array z(dim_vector(3, 3), int32(0));
    int_array ones(dim_vector(2, 2), int32(1));
    z.assign(idx_vector(0, 2, 1), idx_vector(0, 2, 1), ones);
    CHECK(sum(z) == 4);

    // 1x1 source broadcasts across the whole selection
    int_array w(dim_vector(3, 3), int32(0));
    int_array seven(dim_vector(1, 1), int32(7));
    w.assign(idx_vector(0, 2, 1), idx_vector(0, 2, 1), seven);
    CHECK(sum(w) == 28);

    // writing a selection back to itself changes nothing
    int_array before = iota3x3();
    int_array after = before;
    after.assign(idx_vector(0, 2, 1), idx_vector(1, 3, 1),
                 after.index(idx_vector(0, 2, 1), idx_vector(1, 3, 1)));
    for (int r = 0; r < 3; ++r)
        for (int c = 0; c < 3; ++c)
            CHECK(at(after, r, c) == at(before, r, c));

    // shape mismatch and out-of-bounds both refuse
    CHECK_THROWS_WITH_AS(
        z.assign(idx_vector(0, 2, 1), idx_vector(0, 2, 1), b),
        "nonconformant arguments", tym_error);
    CHECK_THROWS_AS(z.assign(idx_vector(0, 4, 1), idx_vector::colon, b), tym_error);
}

TEST_CASE("linear assign flattens column-major") {
    int_array a = iota3x3();
    int_array src(dim_vector(2, 1));
    src.xelem(0) = 100;
    src.xelem(1) = 200;
    a.assign(idx_vector(1, 3, 1), src);
    CHECK(at(a, 1, 0) == 100);
    CHECK(at(a, 2, 0) == 200);
    CHECK(at(a, 0, 0) == 1);
}

TEST_CASE("assign applies the copy-on-write guard") {
    int_array a(dim_vector(2, 2), int32(0));
    int_array alias = a;
    int_array src(dim_vector(1, 1), int32(5));
    a.assign(idx_vector(0), idx_vector(0), src);
    CHECK(at(a, 0, 0) == 5);
    CHECK(at(alias, 0, 0) == 0);
    CHECK(alias.ref_count() == 1);
}

TEST_CASE("index equals a naive gather for random arrays and selectors") {
    std::mt19937 rng(7777);
    auto rand_between = [&](long long lo, long long hi) {
        return lo + static_cast<long long>(rng() % static_cast<unsigned long>(hi - lo + 1));
    };

    auto random_selector = [&](long long dim) -> idx_vector {
        switch (rng() % 3) {
        case 0:
            return idx_vector(rand_between(0, dim - 1));
        case 1: {
            long long step = rand_between(1, 3);
            long long start = rand_between(0, dim - 1);
            long long room = (dim - 1 - start) / step;
            long long count = rand_between(0, room + 1); // may be empty
            if (count == 0)
                return idx_vector(start, start, step);
            long long last = start + (count - 1) * step;
            return idx_vector(start, last + 1, step);
        }
        default:
            return idx_vector::colon;
        }
    };

    for (int trial = 0; trial < 1000; ++trial) {
        long long r = rand_between(1, 8);
        long long c = rand_between(1, 8);
        int_array a(dim_vector(r, c));
        for (long long i = 0; i < a.numel(); ++i)
            a.xelem(i) = static_cast<long long>(rng() % 2000) - 1000;

        idx_vector rs = random_selector(r);
        idx_vector cs = random_selector(c);
        std::vector<long long> ri = rs.expand(r);
        std::vector<long long> ci = cs.expand(c);

        int_array got = a.index(rs, cs);
        REQUIRE(got.rows() == static_cast<int>(ri.size()));
        REQUIRE(got.columns() == static_cast<int>(ci.size()));
        for (size_t p = 0; p < ri.size(); ++p)
            for (size_t q = 0; q < ci.size(); ++q)
                REQUIRE(static_cast<long long>(got.xelem(p, q)) ==
                        static_cast<long long>(a.xelem(ri[p], ci[q])));

        // duality: writing the gathered block back is an identity
        int_array copy = a;
        copy.assign(rs, cs, got);
        for (long long i = 0; i < a.numel(); ++i)
            REQUIRE(static_cast<long long>(copy.xelem(i)) ==
                    static_cast<long long>(a.xelem(i)));
    }
}

TEST_CASE("elementwise ops: values, broadcast, saturation, errors") {
    int_array ones(dim_vector(2, 2), int32(1));
    int_array twos = ones + ones;
    CHECK(sum(twos) == 8);

    int_array big(dim_vector(1, 2));
    big.xelem(0) = 2147483647;
    big.xelem(1) = -2147483648LL;
    int_array sat = big + big; // saturates instead of wrapping
    CHECK(at(sat, 0, 0) == 2147483647);
    CHECK(at(sat, 0, 1) == -2147483648LL);

    int_array small(dim_vector(1, 1), int32(10));
    int_array bc = ones + small; // 1x1 broadcasts
    CHECK(sum(bc) == 44);

    int_array wrong(dim_vector(2, 3), int32(0));
    CHECK_THROWS_WITH_AS(ones + wrong, "nonconformant arguments", tym_error);

    // scalar forms, both sides, both element kinds
    int_array shifted = ones + 4;
    CHECK(sum(shifted) == 20);
    shifted = 10 - ones;
    CHECK(sum(shifted) == 36);

    real_array r(dim_vector(2, 2), 1.5);
    real_array rr = r * 2.0;
    CHECK(rr.xelem(0) == doctest::Approx(3.0));
    rr = 6.0 / r;
    CHECK(rr.xelem(0) == doctest::Approx(4.0));

    // an int array with a real scalar widens
    real_array widened = ones * 0.5;
    CHECK(widened.xelem(0) == doctest::Approx(0.5));
    real_array widened2 = 0.5 * ones;
    CHECK(widened2.xelem(3) == doctest::Approx(0.5));

    // integer elementwise division truncates toward zero and rejects zero
    int_array sevens(dim_vector(1, 2));
    sevens.xelem(0) = 7;
    sevens.xelem(1) = -7;
    int_array halves = sevens / 2;
    CHECK(at(halves, 0, 0) == 3);
    CHECK(at(halves, 0, 1) == -3);
    int_array zero(dim_vector(1, 1), int32(0));
    CHECK_THROWS_WITH_AS(sevens / zero, "division by zero", tym_error);

    // real division by zero follows IEEE instead
    real_array rz(dim_vector(1, 1), 0.0);
    real_array inf = 1.0 / rz;
    CHECK(std::isinf(inf.xelem(0)));

    int_array neg = -sevens;
    CHECK(at(neg, 0, 0) == -7);
    CHECK(at(neg, 0, 1) == 7);
}

TEST_CASE("slice-add composition places a window sum into a larger result") {
    // two 3x3 all-ones inputs; the overlapping-window sum written into a
    // zeroed 3x3 leaves the last row and column untouched
    int_array x(dim_vector(3, 3), int32(1));
    int_array y(dim_vector(3, 3), int32(1));
    int_array z(dim_vector(3, 3), int32(0));
    int_array window = x.index(idx_vector(0, 2, 1), idx_vector(0, 2, 1)) +
                       y.index(idx_vector(1, 3, 1), idx_vector(1, 3, 1));
    z.place(window);
    long long expect[3][3] = {{2, 2, 0}, {2, 2, 0}, {0, 0, 0}};
    for (int r = 0; r < 3; ++r)
        for (int c = 0; c < 3; ++c)
            CHECK(at(z, r, c) == expect[r][c]);
}

TEST_CASE("place: top-left copy with shape guard") {
    int_array dst(dim_vector(3, 3), int32(0));
    int_array src(dim_vector(2, 2), int32(9));
    dst.place(src);
    CHECK(sum(dst) == 36);
    CHECK(at(dst, 2, 2) == 0);

    int_array toobig(dim_vector(4, 2), int32(1));
    CHECK_THROWS_WITH_AS(dst.place(toobig), "nonconformant arguments", tym_error);
}

TEST_CASE("reshape and resize") {
    int_array a = iota3x3();
    a.reshape(1, 9);
    CHECK(a.rows() == 1);
    CHECK(a.columns() == 9);
    CHECK(static_cast<long long>(a.xelem(0, 4)) == 5);
    CHECK_THROWS_AS(a.reshape(2, 4), tym_error);

    int_array b = iota3x3();
    b.resize(2, 2); // keeps the overlap
    CHECK(at(b, 0, 0) == 1);
    CHECK(at(b, 1, 1) == 5);
    b.resize(3, 3); // grows with zero fill
    CHECK(at(b, 2, 2) == 0);
    CHECK(at(b, 0, 0) == 1);
}

TEST_CASE("values: tagging, extraction, failure flag") {
    tym::clear_failed();

    value iv(7);
    CHECK(iv.formatted() == "7\n");
    value rv(0.1);
    CHECK(rv.formatted() == "0.10000000000000001\n");
    value fv(0.25f);
    CHECK(fv.formatted() == "0.25\n");

    int_array a = iota3x3();
    value av(a);
    CHECK(av.formatted() == "array 3 3\n1 4 7\n2 5 8\n3 6 9\n");

    real_array r(dim_vector(1, 2));
    r.xelem(0) = 0.5;
    r.xelem(1) = 1.0 / 3.0;
    CHECK(value(r).formatted() == "array 1 2\n0.5 0.33333333333333331\n");

    // a negative-sign NaN still prints as plain nan
    real_array nanarr(dim_vector(1, 1), 0.0);
    nanarr.xelem(0) = 0.0 / 0.0;
    CHECK(value(nanarr).formatted() == "array 1 1\nnan\n");

    // int widens to real on extraction; real never narrows to int
    CHECK(value(5).array_value().xelem(0) == doctest::Approx(5.0));
    CHECK_FALSE(tym::failed());
    value(2.5).int32_array_value();
    CHECK(tym::failed());
    tym::clear_failed();

    int_array ints = av.int32_array_value();
    CHECK(static_cast<long long>(ints.xelem(1, 1)) == 5);
    real_array widened = av.array_value();
    CHECK(widened.xelem(2, 2) == doctest::Approx(9.0));
    CHECK_FALSE(tym::failed());
}

TEST_CASE("value lists: growth on write, benign out-of-range reads") {
    tym::clear_failed();
    value_list retval;
    CHECK(retval.length() == 0);
    retval(0) = 42;
    CHECK(retval.length() == 1);

    const value_list& args = retval;
    CHECK_FALSE(tym::failed());
    value miss = args(3);
    CHECK(miss.is_empty());
    CHECK(tym::failed()); // flagged, not thrown: the count guard reports it
    tym::clear_failed();

    CHECK(args(0).formatted() == "42\n");
}

TEST_CASE("argument file parsing") {
    value_list args = tym::parse_args_text(
        "# a comment\n"
        "int 41\n"
        "\n"
        "real 2.5\n"
        "intarray 2 3\n"
        "1 2 3\n"
        "4 5 6\n"
        "realarray 1 2\n"
        "0.5 1.5\n");
    CHECK(args.length() == 4);
    CHECK(args(0).formatted() == "41\n");
    CHECK(args(1).formatted() == "2.5\n");
    int_array a = args(2).int32_array_value();
    CHECK(a.rows() == 2);
    CHECK(a.columns() == 3);
    CHECK(static_cast<long long>(a.xelem(1, 0)) == 4); // text rows are row-major
    CHECK(static_cast<long long>(a.xelem(0, 2)) == 3);
    real_array rr = args(3).array_value();
    CHECK(rr.xelem(0, 1) == doctest::Approx(1.5));

    // oversized integer literals saturate like every other int store
    value_list sat = tym::parse_args_text("int 99999999999\n");
    CHECK(sat(0).formatted() == "2147483647\n");

    CHECK_THROWS_AS(tym::parse_args_text("int\n"), tym_error);
    CHECK_THROWS_AS(tym::parse_args_text("int x\n"), tym_error);
    CHECK_THROWS_AS(tym::parse_args_text("intarray 2 2\n1 2\n"), tym_error);
    CHECK_THROWS_AS(tym::parse_args_text("intarray 1 2\n1 2 3\n"), tym_error);
    CHECK_THROWS_AS(tym::parse_args_text("floatarray 1 1\n1\n"), tym_error);
}
