#include <doctest.h>

#include "frogcert/certificate.hpp"

using namespace frogcert;

TEST_CASE("certificate grid endpoints and spacing") {
    const auto grid = certificate_grid(257);
    REQUIRE(grid.size() == 257);
    CHECK(grid.front() == Rat64(1));
    CHECK(grid.back() == Rat64(0));
    CHECK(grid[1] == Rat64(255, 256));
    for (std::size_t i = 1; i < grid.size(); ++i)
        CHECK(grid[i - 1] - grid[i] == Rat64(1, 256));
}

TEST_CASE("a giant step fails immediately from rate zero") {
    const auto grid = certificate_grid(257);
    CHECK_FALSE(tangent_condition(Rat64(0), Rat64(16), grid));

    CertifyOptions opts;
    opts.menu = {Rat64(16)};
    opts.max_passes = 5;
    const Certificate cert = run_certificate(opts);
    CHECK(cert.passes == 0);
    CHECK(cert.final_rate == Rat64(0));
}

TEST_CASE("zero pass budget yields the empty certificate") {
    CertifyOptions opts;
    opts.max_passes = 0;
    const Certificate cert = run_certificate(opts);
    CHECK(cert.passes == 0);
    CHECK(cert.final_rate == Rat64(0));
    CHECK_FALSE(verify_certificate(cert).ok); // final rate below 15
}

TEST_CASE("empty menu yields the empty certificate") {
    CertifyOptions opts;
    opts.menu.clear();
    const Certificate cert = run_certificate(opts);
    CHECK(cert.passes == 0);
    CHECK(cert.final_rate == Rat64(0));
}

TEST_CASE("the first thirty passes follow the recorded schedule") {
    // regression: passes 1-20 accept 1/16, 21-28 accept 1/32, then 3/256
    CertifyOptions opts;
    opts.max_passes = 30;
    const Certificate cert = run_certificate(opts);
    REQUIRE(cert.passes == 30);
    for (int i = 0; i < 20; ++i)
        CHECK(cert.steps[i].delta == Rat64(1, 16));
    for (int i = 20; i < 28; ++i)
        CHECK(cert.steps[i].delta == Rat64(1, 32));
    for (int i = 28; i < 30; ++i)
        CHECK(cert.steps[i].delta == Rat64(3, 256));
    CHECK(cert.final_rate == Rat64(195, 128));
}

TEST_CASE("accepted deltas are the largest passing menu value") {
    CertifyOptions opts;
    opts.max_passes = 25;
    const Certificate cert = run_certificate(opts);
    const auto grid = certificate_grid(opts.grid_size);
    for (const auto& s : cert.steps) {
        for (const Rat64& d : opts.menu) {
            if (s.delta < d)
                CHECK_FALSE(tangent_condition(s.u_before, d, grid));
        }
    }
}

TEST_CASE("verification replays and rejects tampering") {
    CertifyOptions opts;
    opts.max_passes = 12;
    Certificate cert = run_certificate(opts);
    REQUIRE(cert.passes == 12);

    // the genuine prefix fails only the final-rate threshold
    const VerifyResult honest = verify_certificate(cert);
    CHECK_FALSE(honest.ok);
    CHECK(honest.message.find("below the 15") != std::string::npos);

    // a step inflated past anything the tangent check accepts
    Certificate bad = cert;
    bad.steps[5].delta = Rat64(16);
    bad.steps[5].u_after = bad.steps[5].u_before + bad.steps[5].delta;
    const VerifyResult vr = verify_certificate(bad);
    CHECK_FALSE(vr.ok);
    CHECK(vr.first_bad_step == 6);
    CHECK(vr.message.find("tangent") != std::string::npos);

    // an inflated step that still passes its own check breaks the chain at
    // the successor instead
    Certificate bad2 = cert;
    bad2.steps[5].delta = Rat64(1, 8);
    bad2.steps[5].u_after = bad2.steps[5].u_before + bad2.steps[5].delta;
    const VerifyResult vr2 = verify_certificate(bad2);
    CHECK_FALSE(vr2.ok);
    CHECK(vr2.first_bad_step == 7);
}

TEST_CASE("json round trip is bit exact") {
    CertifyOptions opts;
    opts.max_passes = 8;
    const Certificate cert = run_certificate(opts);
    const std::string text = certificate_to_json(cert);
    const Certificate back = certificate_from_json(text);
    CHECK(certificate_to_json(back) == text);
    CHECK(back.final_rate == cert.final_rate);
    CHECK(back.steps.size() == cert.steps.size());
    for (std::size_t i = 0; i < back.steps.size(); ++i) {
        CHECK(back.steps[i].u_before == cert.steps[i].u_before);
        CHECK(back.steps[i].delta == cert.steps[i].delta);
    }
}

TEST_CASE("thread count does not change the certificate") {
    CertifyOptions a;
    a.max_passes = 10;
    CertifyOptions b = a;
    b.threads = 4;
    CHECK(certificate_to_json(run_certificate(a)) ==
          certificate_to_json(run_certificate(b)));
}

TEST_CASE("menu must be strictly decreasing") {
    CertifyOptions opts;
    opts.menu = {Rat64(1, 32), Rat64(1, 16)};
    CHECK_THROWS_AS(run_certificate(opts), std::invalid_argument);
}
