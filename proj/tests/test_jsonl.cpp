#include <doctest.h>

#include <sstream>

#include "rfimon/errors.hpp"
#include "rfimon/jsonl.hpp"

using namespace rfimon;

TEST_CASE("well-formed mixed stream parses in order") {
    std::istringstream in(
        R"({"t":1.0,"kind":"spectrum","f0_hz":1573.0e6,"df_hz":0.5e6,"bins":[-160,-159],"pga":12,"temp_k":301.5})"
        "\n"
        R"({"t":1.2,"kind":"epoch","sat":"S131","cn0":45.5,"elev":46.0})"
        "\n"
        R"({"t":1.4,"kind":"epoch","sat":"G07","elev":12.0})"
        "\n");
    const auto res = read_epoch_stream(in);
    REQUIRE(res.items.size() == 3);
    CHECK(res.violations.empty());
    CHECK(res.warnings.empty());

    const auto& rec = std::get<SpectrumRecord>(res.items[0]);
    CHECK(rec.t == doctest::Approx(1.0));
    CHECK(rec.bins_db.size() == 2);
    CHECK(rec.pga == doctest::Approx(12.0));

    const auto& e1 = std::get<ReceiverEpoch>(res.items[1]);
    CHECK(e1.sat == "S131");
    REQUIRE(e1.cn0.has_value());
    CHECK(*e1.cn0 == doctest::Approx(45.5));

    // absent cn0 means loss of lock, not an error
    const auto& e2 = std::get<ReceiverEpoch>(res.items[2]);
    CHECK_FALSE(e2.cn0.has_value());
}

TEST_CASE("malformed lines are reported with 1-based numbers, stream continues") {
    std::istringstream in(
        R"({"t":1.0,"kind":"epoch","sat":"S131","cn0":45.0,"elev":46.0})"
        "\n"
        "not json at all\n"
        R"({"t":2.0,"kind":"epoch","sat":"S131","elev":46.0})"
        "\n"
        R"({"t":3.0,"kind":"epoch","sat":"S131","cn0":99.0,"elev":46.0})"
        "\n"
        R"({"t":4.0,"kind":"wat"})"
        "\n"
        R"({"t":5.0,"kind":"epoch","sat":"S131","cn0":40.0,"elev":120.0})"
        "\n");
    const auto res = read_epoch_stream(in);
    CHECK(res.items.size() == 2);  // lines 1 and 3 survive
    REQUIRE(res.violations.size() == 4);
    CHECK(res.violations[0].line == 2);
    CHECK(res.violations[1].line == 4);  // cn0 out of [0, 65]
    CHECK(res.violations[2].line == 5);  // unknown kind
    CHECK(res.violations[3].line == 6);  // elev out of [0, 90]
}

TEST_CASE("non-monotone timestamps warn but are kept") {
    std::istringstream in(
        R"({"t":5.0,"kind":"epoch","sat":"S131","cn0":45.0,"elev":46.0})"
        "\n"
        R"({"t":4.0,"kind":"epoch","sat":"S131","cn0":45.0,"elev":46.0})"
        "\n");
    const auto res = read_epoch_stream(in);
    CHECK(res.items.size() == 2);
    CHECK(res.violations.empty());
    REQUIRE(res.warnings.size() == 1);
    CHECK(res.warnings[0].find("line 2") != std::string::npos);
}

TEST_CASE("blank lines are skipped without violations") {
    std::istringstream in(
        "\n"
        R"({"t":1.0,"kind":"epoch","sat":"S131","cn0":45.0,"elev":46.0})"
        "\n\n");
    const auto res = read_epoch_stream(in);
    CHECK(res.items.size() == 1);
    CHECK(res.violations.empty());
}

TEST_CASE("to_jsonl round-trips through the reader") {
    SpectrumRecord rec;
    rec.t = 123.5;
    rec.f0_hz = 1573.0e6;
    rec.df_hz = 0.5e6;
    rec.bins_db = {-160.25, -158.0, -161.5};
    rec.pga = 9.0;
    rec.temp_k = 305.1;

    ReceiverEpoch e;
    e.t = 124.0;
    e.sat = "S131";
    e.cn0 = 44.25;
    e.elevation_deg = 46.0;

    std::istringstream in(to_jsonl(rec) + "\n" + to_jsonl(e) + "\n");
    const auto res = read_epoch_stream(in);
    REQUIRE(res.items.size() == 2);
    CHECK(res.violations.empty());

    const auto& r2 = std::get<SpectrumRecord>(res.items[0]);
    CHECK(r2.t == doctest::Approx(rec.t));
    CHECK(r2.f0_hz == doctest::Approx(rec.f0_hz));
    CHECK(r2.df_hz == doctest::Approx(rec.df_hz));
    REQUIRE(r2.bins_db.size() == rec.bins_db.size());
    for (std::size_t i = 0; i < rec.bins_db.size(); ++i)
        CHECK(r2.bins_db[i] == doctest::Approx(rec.bins_db[i]));
    CHECK(r2.temp_k == doctest::Approx(rec.temp_k));

    const auto& e2 = std::get<ReceiverEpoch>(res.items[1]);
    CHECK(e2.sat == e.sat);
    REQUIRE(e2.cn0.has_value());
    CHECK(*e2.cn0 == doctest::Approx(*e.cn0));
    CHECK(e2.elevation_deg == doctest::Approx(e.elevation_deg));
}

TEST_CASE("missing file raises Unreadable") {
    CHECK_THROWS_AS(read_epoch_stream_file("/nonexistent/path/stream.jsonl"), Unreadable);
}
