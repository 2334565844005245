#include <doctest.h>

#include <algorithm>
#include <cstdint>
#include <string_view>
#include <vector>

#include "wsdbench/rng.hpp"

using namespace wsd;

TEST_CASE("fnv1a64") {
    SUBCASE("published test vectors") {
        CHECK(fnv1a64(std::string_view{}) == 0xcbf29ce484222325ULL);
        CHECK(fnv1a64(std::string_view{"a"}) == 0xaf63dc4c8601ec8cULL);
        CHECK(fnv1a64(std::string_view{"foobar"}) == 0x85944171f73967e8ULL);
    }
    SUBCASE("integer overload hashes little-endian bytes") {
        uint64_t v = 0x0807060504030201ULL;
        CHECK(fnv1a64(v) == fnv1a64(std::string_view{"\x01\x02\x03\x04\x05\x06\x07\x08", 8}));
    }
    SUBCASE("chaining respects the running state") {
        uint64_t h = fnv1a64(std::string_view{"ab"});
        CHECK(fnv1a64(std::string_view{"b"}, fnv1a64(std::string_view{"a"})) == h);
    }
}

TEST_CASE("task seed derivation") {
    CHECK(task_seed(42, "art.n") == fnv1a64(std::string_view{"art.n"}, fnv1a64(uint64_t{42})));
    CHECK(task_seed(42, "art.n") != task_seed(42, "bar.n"));
    CHECK(task_seed(42, "art.n") != task_seed(43, "art.n"));
    CHECK(task_seed(42, "art.n") == task_seed(42, "art.n"));
}

TEST_CASE("hex round trips") {
    CHECK(to_hex(0) == "0000000000000000");
    CHECK(to_hex(0xdeadbeefULL) == "00000000deadbeef");
    CHECK(to_hex(0xffffffffffffffffULL) == "ffffffffffffffff");
    CHECK(parse_hex("00000000deadbeef") == 0xdeadbeefULL);
    CHECK(parse_hex("DEADBEEF") == 0xdeadbeefULL);
    CHECK(parse_hex(to_hex(0x123456789abcdef0ULL)) == 0x123456789abcdef0ULL);
    // Stops at the first non-hex character.
    CHECK(parse_hex("ffz1") == 0xffULL);
}

TEST_CASE("rng streams") {
    SUBCASE("engine output is pinned by the standard") {
        // 10000th draw of mt19937_64 seeded with its default constant.
        Rng rng(5489);
        uint64_t v = 0;
        for (int i = 0; i < 10000; ++i) v = rng.next();
        CHECK(v == 9981545732273789042ULL);
    }
    SUBCASE("same seed gives the same stream") {
        Rng a(123), b(123), c(124);
        bool all_equal = true;
        bool any_diff = false;
        for (int i = 0; i < 64; ++i) {
            uint64_t va = a.next();
            all_equal = all_equal && va == b.next();
            any_diff = any_diff || va != c.next();
        }
        CHECK(all_equal);
        CHECK(any_diff);
    }
    SUBCASE("uniform is the top 53 bits over 2^53") {
        Rng a(7), b(7);
        for (int i = 0; i < 16; ++i) {
            CHECK(a.uniform() == static_cast<double>(b.next() >> 11) * 0x1.0p-53);
        }
        Rng r(9);
        for (int i = 0; i < 1000; ++i) {
            double u = r.uniform();
            CHECK(u >= 0.0);
            CHECK(u < 1.0);
        }
    }
    SUBCASE("bounded uniform stays in range") {
        Rng r(11);
        for (int i = 0; i < 200; ++i) {
            double u = r.uniform(-2.5, 1.5);
            CHECK(u >= -2.5);
            CHECK(u < 1.5);
        }
    }
    SUBCASE("bernoulli at the extremes") {
        Rng r(13);
        for (int i = 0; i < 50; ++i) CHECK_FALSE(r.bernoulli(0.0));
        for (int i = 0; i < 50; ++i) CHECK(r.bernoulli(1.0));
    }
    SUBCASE("below covers the range") {
        Rng r(17);
        std::vector<int> seen(4, 0);
        for (int i = 0; i < 200; ++i) {
            uint64_t v = r.below(4);
            CHECK(v < 4);
            ++seen[v];
        }
        for (int count : seen) CHECK(count > 0);
    }
    SUBCASE("shuffle is a seeded fisher-yates permutation") {
        std::vector<int> v(10);
        for (int i = 0; i < 10; ++i) v[static_cast<size_t>(i)] = i;
        std::vector<int> w = v;
        Rng a(3), b(3);
        a.shuffle(v);

        for (size_t i = w.size(); i > 1; --i) {
            std::swap(w[i - 1], w[static_cast<size_t>(b.below(i))]);
        }
        CHECK(v == w);

        std::vector<int> sorted = v;
        std::sort(sorted.begin(), sorted.end());
        for (int i = 0; i < 10; ++i) CHECK(sorted[static_cast<size_t>(i)] == i);

        std::vector<int> empty;
        a.shuffle(empty);
        CHECK(empty.empty());
        std::vector<int> one{5};
        a.shuffle(one);
        CHECK(one == std::vector<int>{5});
    }
}
