#include <doctest.h>

#include "flmod/moduleio.hpp"
#include "flmod/sen.hpp"

#include <random>
#include <sstream>

using namespace flmod;
using namespace flmod::io;
using arith::PrimeContext;

namespace {

const char* kW1Fixture = R"(# Tate module W{1} over Z/9
flmod module v1
p 3
N 2
kind fl
wmax 1
piece 0 free 1
piece 1 free 1
vminus 1
1
phi 0
3
phi 1
1
end
)";

}  // namespace

TEST_CASE("parse and validate the W{1} document") {
    auto doc = parse_module_string(kW1Fixture);
    CHECK(doc.kind == "fl");
    CHECK(doc.mod.wmax() == 1);
    CHECK(fl::fl_validate(doc.mod).valid);
    // canonical round trip: emit(parse(x)) stable under another pass
    std::string once = emit_module(doc);
    std::string twice = emit_module(parse_module_string(once));
    CHECK(once == twice);
}

TEST_CASE("emit/parse round trips random modules, f = 1 and f = 2") {
    std::mt19937 rng(123);
    {
        auto ctx = PrimeContext::create(3, 2);
        for (int it = 0; it < 20; ++it) {
            ModuleDoc doc;
            doc.mod = fl::random_flmodule(ctx, rng, 2, 4);
            std::string text = emit_module(doc);
            ModuleDoc back = parse_module_string(text);
            CHECK(sen::fl_equal(doc.mod, back.mod));
            CHECK(emit_module(back) == text);
        }
    }
    {
        auto ctx = PrimeContext::create(2, 3, 2, {Int(1), Int(1), Int(1)});
        for (int it = 0; it < 10; ++it) {
            ModuleDoc doc;
            doc.mod = fl::random_flmodule(ctx, rng, 1, 3);
            std::string text = emit_module(doc);
            ModuleDoc back = parse_module_string(text);
            CHECK(sen::fl_equal(doc.mod, back.mod));
            CHECK(back.mod.ctx()->f() == 2);
            CHECK(emit_module(back) == text);
        }
    }
}

TEST_CASE("parse errors are line-addressed") {
    // dimension mismatch: vminus 1 must be 1x1 here
    const char* bad = R"(flmod module v1
p 3
N 1
kind fl
wmax 1
piece 0 tors 1
piece 1 tors 1
vminus 1
1 1
phi 0
1
phi 1
1
end
)";
    CHECK_THROWS_AS(parse_module_string(bad), FormatError);
    try {
        parse_module_string(bad);
    } catch (const FormatError& e) {
        std::string msg = e.what();
        CHECK(msg.find("line 9") != std::string::npos);
    }
    CHECK_THROWS_AS(parse_module_string("flmod module v1\np 4\nend\n"), FormatError);
    CHECK_THROWS_AS(parse_module_string("not a module\n"), FormatError);
}

TEST_CASE("mazur kind documents") {
    auto doc = parse_module_string(kW1Fixture);
    doc.kind = "mazur";
    std::string text = emit_module(doc);
    auto back = parse_module_string(text);
    CHECK(back.kind == "mazur");
    CHECK(mazsyn::mazur_validate(back.as_mazur()).valid);
}

TEST_CASE("morphism documents round trip") {
    auto ctx = PrimeContext::create(3, 2);
    MorphismDoc doc;
    doc.source.mod = fl::unit_module(ctx);
    doc.target.mod = fl::unit_module(ctx);
    gmod::Mat m(ctx, 1, 1);
    m.at(0, 0) = ctx->from_int(3);
    doc.maps.push_back(m);
    std::string text = emit_morphism(doc);
    std::istringstream is(text);
    MorphismDoc back = parse_morphism(is);
    CHECK(fl::fl_morphism_check(back.morphism()).valid);
    CHECK(emit_morphism(back) == text);
}
