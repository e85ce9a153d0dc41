#include <doctest.h>

#include <sstream>

#include "test_helpers.hpp"
#include "trisec/catalog.hpp"
#include "trisec/io.hpp"

using namespace trisec;
using namespace trisec_test;

TEST_SUITE("io") {

TEST_CASE("config files round-trip bit-exactly") {
    for (const PointConfiguration& cfg :
         {catalog::five_points(), catalog::moae(), catalog::a_of_t(Rational(1, 8)),
          catalog::octagon(), catalog::schoenhardt8()}) {
        std::string text = io::config_str(cfg);
        std::istringstream in(text);
        PointConfiguration again = io::read_config(in);
        CHECK(io::config_str(again) == text);
        CHECK(again.labels() == cfg.labels());
        CHECK(again.dim() == cfg.dim());
        for (Label l : cfg.labels()) CHECK(again.coords(l) == cfg.coords(l));
    }
}

TEST_CASE("config parse errors carry positions") {
    auto expect_error = [](const std::string& text, int line) {
        std::istringstream in(text);
        try {
            io::read_config(in);
            FAIL("expected parse error");
        } catch (const ParseError& e) {
            CHECK(e.line == line);
        }
    };
    expect_error("nonsense 3 2\n", 1);
    expect_error("points 2 2\n1 0 0\n2 0\n", 3);
    expect_error("points 2 2\n1 0 0\n2 x 0\n", 3);
    expect_error("points 1 2 weird\n", 1);
    expect_error("points 2 2\n1 1/0 0\n2 0 1\n", 2);
}

TEST_CASE("cells files round-trip and accept comments") {
    std::string text = "# a triangulation\n1 2 5\n1 3 5\n2 3 5\n2 3 4\n";
    std::istringstream in(text);
    auto cells = io::read_cells(in);
    REQUIRE(cells.size() == 4);
    std::ostringstream out;
    io::write_cells(out, cells);
    CHECK(out.str() == "1 2 5\n1 3 5\n2 3 4\n2 3 5\n"); // lines sorted

    std::istringstream empty("# nothing\n");
    CHECK_THROWS_AS(io::read_cells(empty), ParseError);
}

TEST_CASE("lift files round-trip") {
    Lift w;
    w.values[1] = Scalar::parse("1/2+3r2");
    w.values[2] = Scalar(-4);
    w.values[7] = Scalar::parse("-1r2");
    std::ostringstream out;
    io::write_lift(out, w);
    std::istringstream in(out.str());
    Lift again = io::read_lift(in);
    CHECK(again.values == w.values);

    std::istringstream dup("1 0\n1 2\n");
    CHECK_THROWS_AS(io::read_lift(dup), ParseError);
}

} // TEST_SUITE
