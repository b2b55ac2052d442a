#include <cmath>
#include <limits>
#include <sstream>

#include <gtest/gtest.h>

#include <qineq/report.hpp>

using qineq::complex;
using qineq::QBase;

TEST(Format, RealRoundTrip)
{
    for (double x : {0.0, -0.0, 1.0, 0.1, 1e-300, 6.02214076e23, -2.5, std::numbers::pi}) {
        const auto back = qineq::parse_real(qineq::format_real(x));
        ASSERT_TRUE(back.has_value());
        EXPECT_EQ(*back, x);
    }
    EXPECT_EQ(qineq::format_real(0.5), "0.5");
    EXPECT_EQ(qineq::parse_real("+3"), 3.0);
    EXPECT_FALSE(qineq::parse_real("3x").has_value());
    EXPECT_FALSE(qineq::parse_real("").has_value());
}

TEST(Format, ComplexParsing)
{
    EXPECT_EQ(qineq::parse_complex("2"), complex(2.0, 0.0));
    EXPECT_EQ(qineq::parse_complex("-1.5"), complex(-1.5, 0.0));
    EXPECT_EQ(qineq::parse_complex("0.3i"), complex(0.0, 0.3));
    EXPECT_EQ(qineq::parse_complex("1-2i"), complex(1.0, -2.0));
    EXPECT_EQ(qineq::parse_complex("1e-3+2e+2i"), complex(1e-3, 200.0));
    EXPECT_EQ(qineq::parse_complex("-i"), complex(0.0, -1.0));
    EXPECT_EQ(qineq::parse_complex("i"), complex(0.0, 1.0));
    EXPECT_FALSE(qineq::parse_complex("1+").has_value());
    EXPECT_FALSE(qineq::parse_complex("abc").has_value());
    const complex z(0.1, -7.25e-9);
    EXPECT_EQ(qineq::parse_complex(qineq::format_complex(z)), z);
}

TEST(Csv, HeaderAndRowShape)
{
    qineq::SweepPlan plan;
    plan.abs_z_grid = {1.0};
    plan.angle_count = 2;
    const auto records = qineq::audit_envelope(plan, qineq::AqTarget{QBase(0.5)});
    std::ostringstream os;
    qineq::write_csv(os, records);
    std::istringstream is(os.str());
    std::string line;
    std::getline(is, line);
    EXPECT_EQ(line, qineq::csv_header);
    std::getline(is, line);
    EXPECT_EQ(line.rfind("aq,0.5,1,,1,0,", 0), 0u) << line;
    EXPECT_NE(line.find(",true,"), std::string::npos);
    const auto fields = qineq::split(line, ',');
    EXPECT_EQ(fields.size(), 12u);
}

TEST(Csv, ErrorRowsAreMarked)
{
    qineq::LaurentSpec spec{complex(1.0, 0.0), [](long long k) { return k == 0 ? complex(1.0) : complex(0.0); },
                            1.0, QBase(0.5), 1.0};
    qineq::SweepPlan plan;
    plan.abs_z_grid = {1.0};
    plan.angle_count = 1;
    std::ostringstream os;
    qineq::write_csv(os, qineq::audit_envelope(plan, qineq::LaurentTarget{spec}));
    std::istringstream is(os.str());
    const auto rows = qineq::read_csv(is);
    ASSERT_EQ(rows.size(), 1u);
    EXPECT_EQ(rows[0].pass, "error");
}

TEST(Csv, RoundTripReproducesValuesAndEnvelopes)
{
    std::vector<qineq::AuditRecord> all;
    auto append = [&](std::vector<qineq::AuditRecord> more) {
        all.insert(all.end(), more.begin(), more.end());
    };
    qineq::SweepPlan plan;
    plan.abs_z_grid = qineq::log_grid(1e-2, 1e2, 5);
    plan.angle_count = 3;
    append(qineq::audit_envelope(plan, qineq::AqTarget{QBase(0.4)}));
    append(qineq::audit_envelope(plan, qineq::ThetaTarget{QBase(0.3), 0.75}));
    append(qineq::audit_envelope(plan, qineq::PhiParams({complex(0.5, 0.25)}, {0.3, 0.1}, QBase(0.6))));
    append(qineq::audit_envelope(plan, qineq::LaurentTarget{qineq::theta_laurent_spec(QBase(0.5), 0.5), "theta"}));
    plan.parameter_draws = 50;
    append(qineq::random_confluent_audit(plan));

    std::ostringstream os;
    qineq::write_csv(os, all);
    std::istringstream is(os.str());
    const auto rows = qineq::read_csv(is);
    ASSERT_EQ(rows.size(), all.size());

    for (std::size_t i = 0; i < rows.size(); ++i) {
        const auto& row = rows[i];
        EXPECT_EQ(row.function_tag, all[i].function_tag);
        EXPECT_EQ(row.z, all[i].z);
        EXPECT_EQ(row.l, all[i].l);
        const auto target = qineq::target_from_digest(row.function_tag, row.q, row.param_digest);
        const auto rec = qineq::PreparedTarget(target).audit(row.z, qineq::default_tol, 1e-12);
        ASSERT_TRUE(rec.evaluated()) << row.param_digest;
        EXPECT_EQ(rec.param_digest, row.param_digest);
        EXPECT_NEAR(rec.abs_value, row.abs_value, 1e-12 * row.abs_value) << i;
        EXPECT_NEAR(rec.envelope_log, row.envelope_log, 1e-12 * std::max(1.0, std::abs(row.envelope_log))) << i;
    }
}

TEST(Csv, RejectsMalformedInput)
{
    std::istringstream bad_header("function,q\n");
    EXPECT_THROW(qineq::read_csv(bad_header), qineq::invalid_argument);
    std::istringstream short_row(std::string(qineq::csv_header) + "\naq,0.5\n");
    EXPECT_THROW(qineq::read_csv(short_row), qineq::invalid_argument);
    EXPECT_THROW(qineq::target_from_digest(qineq::FunctionTag::theta, 0.5, "beta=1"), qineq::invalid_argument);
}

TEST(Json, RecordFields)
{
    qineq::SweepPlan plan;
    plan.abs_z_grid = {1.0};
    plan.angle_count = 1;
    const auto records = qineq::audit_envelope(plan, qineq::ThetaTarget{QBase(0.5), 0.5});
    std::ostringstream os;
    qineq::write_json(os, records);
    const auto j = nlohmann::json::parse(os.str());
    ASSERT_TRUE(j.is_array());
    ASSERT_EQ(j.size(), 1u);
    EXPECT_EQ(j[0]["function"], "theta");
    EXPECT_TRUE(j[0]["l"].is_null());
    EXPECT_EQ(j[0]["pass"], true);
    EXPECT_NEAR(j[0]["abs_value"].get<double>(), 2.1289368272118771587, 1e-14);

    qineq::AuditRecord overflow = records[0];
    overflow.envelope_log = std::numeric_limits<double>::infinity();
    EXPECT_EQ(qineq::to_json(overflow)["envelope_log"], "inf");
}
