#include <doctest.h>

#include "qb/fixtures.hpp"
#include "qb/harness.hpp"
#include "qb/json_io.hpp"

using namespace qb;

TEST_CASE("terminal and arrow categories validate cleanly") {
    CHECK(validate_category(fixtures::terminal_category()).ok());
    CHECK(validate_category(fixtures::arrow_category()).ok());
}

TEST_CASE("a corrupted unit entry is reported with the offending ids") {
    FinCategory c = fixtures::arrow_category();
    c.composition[{"1Y", "f"}] = "1Y";
    ValidationReport r = validate_category(c);
    REQUIRE_FALSE(r.ok());
    bool cited = false;
    for (const auto& issue : r.issues)
        if (issue.rule == "unit-law" && issue.detail.find("1Y") != std::string::npos &&
            issue.detail.find("f") != std::string::npos)
            cited = true;
    CHECK(cited);
}

TEST_CASE("duplicate ids are violations, not silently merged") {
    FinCategory c = fixtures::terminal_category();
    c.objects.push_back("*");
    ValidationReport r = validate_category(c);
    REQUIRE_FALSE(r.ok());
    CHECK(r.issues.front().rule == "duplicate-object");

    FinCategory d = fixtures::arrow_category();
    d.morphisms.push_back({"f", "X", "Y"});
    CHECK_FALSE(validate_category(d).ok());
}

TEST_CASE("opposite swaps endpoints and transposes composition") {
    CHECK(opposite_category(fixtures::terminal_category()) ==
          fixtures::terminal_category());

    FinCategory op = opposite_category(fixtures::arrow_category());
    const Morphism* f = op.morphism("f");
    REQUIRE(f != nullptr);
    CHECK(f->src == "Y");
    CHECK(f->dst == "X");
    CHECK(op.compose("1X", "f") == "f");

    CHECK(opposite_category(op) == fixtures::arrow_category());
}

TEST_CASE("hom sets") {
    FinCategory one = fixtures::terminal_category();
    CHECK(one.hom("*", "*") == std::vector<std::string>{"id"});

    FinCategory arrow = fixtures::arrow_category();
    CHECK(arrow.hom("X", "Y") == std::vector<std::string>{"f"});
    CHECK(arrow.hom("Y", "X").empty());
    CHECK_THROWS_AS(arrow.hom("Z", "X"), data_error);
}

TEST_CASE("opposite of a valid category is valid; homs partition morphisms") {
    for (std::uint64_t seed = 0; seed < 40; ++seed) {
        GenConfig cfg;
        cfg.seed = seed;
        FinCategory c = gen_fin_category(cfg);
        CHECK(validate_category(opposite_category(c)).ok());

        std::size_t covered = 0;
        for (const auto& x : c.objects)
            for (const auto& y : c.objects) covered += c.hom(x, y).size();
        CHECK(covered == c.morphisms.size());
    }
}

TEST_CASE("JSON round-trips bit-exactly") {
    for (const FinCategory& c :
         {fixtures::terminal_category(), fixtures::arrow_category()}) {
        std::string once = canonical_dump(to_json(c));
        FinCategory back = fincategory_from_json(nlohmann::json::parse(once));
        CHECK(back == c);
        CHECK(canonical_dump(to_json(back)) == once);
    }
    GenConfig cfg;
    cfg.seed = 9;
    FinCategory c = gen_fin_category(cfg);
    std::string once = canonical_dump(to_json(c));
    CHECK(canonical_dump(to_json(fincategory_from_json(nlohmann::json::parse(once)))) ==
          once);
}
