#include <doctest.h>

#include "p1dyn/census.hpp"

using namespace p1dyn;

TEST_CASE("census q = 2: the full table") {
    CensusOptions opt;
    opt.q = 2;
    CensusTable t = census_serial(opt);
    REQUIRE(t.rows.size() == 4);
    CHECK(t.all_agree());
    CHECK(t.row(0, 0)->max_aut_order == 6);
    CHECK(t.row(0, 1)->max_aut_order == 1);
    CHECK(t.row(0, 1)->special == SpecialPoint::Char2AlphaTwoPoint);
    CHECK(t.row(1, 0)->max_aut_order == 1);
    CHECK(t.row(1, 1)->max_aut_order == 1);
    // every occupied point on the line sigma1 = 0 except (0,1) has order >= 2
    for (const auto& r : t.rows)
        if (r.s1_key == 0 && r.s2_key != 1) CHECK(r.max_aut_order >= 2);
}

TEST_CASE("census q = 3: nontrivial points are exactly the cubic, no S3") {
    CensusOptions opt;
    opt.q = 3;
    CensusTable t = census_serial(opt);
    CHECK(t.all_agree());
    Field F3 = create_field(3, 1);
    for (const auto& r : t.rows) {
        CHECK(r.max_aut_order != 6);
        ModuliPoint pt{F3->from_key(r.s1_key), F3->from_key(r.s2_key), F3->zero()};
        bool on_cubic = locus_cubic(F3).eval(pt.s1, pt.s2).is_zero();
        CHECK((r.max_aut_order > 1) == on_cubic);
    }
}

TEST_CASE("census q = 4 agrees with the char-2 line") {
    CensusOptions opt;
    opt.q = 4;
    opt.oracle_bound = 4;
    CensusTable t = census_serial(opt);
    CHECK(t.all_agree());
    // the alpha2 point (0, 1) is reduced-trivial; (0, 0) carries S3
    CHECK(t.row(0, 0)->max_aut_order == 6);
    CHECK(t.row(0, 1)->max_aut_order == 1);
}

TEST_CASE("parallel census equals the serial reference") {
    for (uint64_t q : {2ull, 3ull}) {
        CensusOptions opt;
        opt.q = q;
        CensusTable serial = census_serial(opt);
        CensusTable parallel = census_parallel(opt);
        CHECK(serial.to_csv() == parallel.to_csv());
    }
}

TEST_CASE("census rows: every map's min and max aut orders coincide") {
    // over the closure the group order is a class invariant; the census field
    // is large enough that representatives never see proper subgroups
    CensusOptions opt;
    opt.q = 3;
    CensusTable t = census_serial(opt);
    for (const auto& r : t.rows) CHECK(r.min_aut_order == r.max_aut_order);
}

TEST_CASE("census CSV shape") {
    CensusOptions opt;
    opt.q = 2;
    CensusTable t = census_serial(opt);
    std::string csv = t.to_csv();
    CHECK(csv.find("sigma1,sigma2,count,max_aut_order,on_S,on_Per11,special,predicted,agrees") ==
          0);
    CHECK(csv.find("0,0,6,6,1,0,cusp,S3,1") != std::string::npos);
}
