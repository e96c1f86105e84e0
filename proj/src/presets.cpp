#include "gkp/presets.hpp"

namespace gkp {

namespace {

RunConfig base_config(long p, long q, int lambda, double beta, int nx, int ny,
                      double lx, double ly, long n_steps, double t_end) {
    RunConfig c;
    c.p = p;
    c.q = q;
    c.lambda = lambda;
    c.beta = beta;
    c.nx = nx;
    c.ny = ny;
    c.scale_x = lx;
    c.scale_y = ly;
    c.n_steps = n_steps;
    c.t_end = t_end;
    return c;
}

std::vector<Preset> build_registry() {
    std::vector<Preset> r;

    {
        Preset p;
        p.name = "gkp1-n43-beta1";
        p.description = "focusing equation at the critical exponent, small data: "
                        "dispersion wins, energy conserved to ~1e-5";
        p.config = base_config(4, 3, -1, 1.0, 1024, 1024, 20.0, 4.0, 1000, 0.5);
        p.expected_outcome = "completed";
        p.reported_conservation = 1e-5;
        r.push_back(p);
    }
    {
        Preset p;
        p.name = "gkp1-n43-beta12";
        p.description = "focusing equation at the critical exponent, large data: "
                        "blow-up with an algebraic rate";
        p.config = base_config(4, 3, -1, 12.0, 1024, 8192, 5.0, 5.0, 50000, 0.078);
        p.expected_outcome = "delta_exceeded";
        p.fit = FitRecipe{true, "linf_u", 1000, false};
        p.reported_t_star = 0.0765;
        p.reported_c = -0.6751;
        r.push_back(p);
    }
    {
        Preset p;
        p.name = "gkp1-n2-beta1";
        p.description = "focusing supercritical exponent, small data: no blow-up, "
                        "energy conserved to ~1e-8";
        p.config = base_config(2, 1, -1, 1.0, 1024, 1024, 10.0, 4.0, 10000, 0.1);
        p.expected_outcome = "completed";
        p.reported_conservation = 1e-8;
        r.push_back(p);
    }
    {
        Preset p;
        p.name = "gkp1-n2-beta6";
        p.description = "focusing supercritical exponent, large data: blow-up, "
                        "run stops on the conservation indicator near t = 0.0258";
        p.config = base_config(2, 1, -1, 6.0, 2048, 8192, 5.0, 5.0, 50000, 0.03);
        p.expected_outcome = "delta_exceeded";
        p.fit = FitRecipe{true, "linf_u", 800, false};
        p.reported_t_star = 0.0258375;
        p.reported_c = -0.4445;
        r.push_back(p);
    }
    {
        Preset p;
        p.name = "gkp2-n43-beta6";
        p.description = "defocusing equation at the critical exponent: no blow-up";
        p.config = base_config(4, 3, 1, 6.0, 2048, 1024, 20.0, 4.0, 1000, 2.0);
        p.expected_outcome = "completed";
        r.push_back(p);
    }
    {
        Preset p;
        p.name = "gkp2-n2-beta6";
        p.description = "defocusing, n = 2: norms decrease monotonically";
        p.config = base_config(2, 1, 1, 6.0, 1024, 1024, 10.0, 4.0, 1000, 0.1);
        p.expected_outcome = "completed";
        r.push_back(p);
    }
    {
        Preset p;
        p.name = "gkp2-n3-beta6";
        p.description = "defocusing, n = 3: blow-up; fitted sup-norm exponent "
                        "near -0.1721";
        p.config = base_config(3, 1, 1, 6.0, 4096, 4096, 5.0, 4.0, 20000, 0.0014);
        p.expected_outcome = "delta_exceeded";
        p.fit = FitRecipe{true, "linf_u", 500, false};
        p.reported_c = -0.1721;
        r.push_back(p);
    }
    {
        Preset p;
        p.name = "gkp2-n4-beta3";
        p.description = "defocusing, n = 4: blow-up; fitted sup-norm exponent "
                        "near -0.1623";
        p.config = base_config(4, 1, 1, 3.0, 4096, 4096, 5.0, 5.0, 20000, 0.0007);
        p.expected_outcome = "delta_exceeded";
        p.fit = FitRecipe{true, "linf_u", 500, false};
        p.reported_c = -0.1623;
        r.push_back(p);
    }
    {
        Preset p;
        p.name = "rescaled-n43";
        p.description = "dynamically rescaled solver at the critical exponent";
        p.config = base_config(4, 3, -1, 12.0, 1024, 1024, 11.0, 10.0, 10000, 0.1);
        p.config.kind = "rescaled";
        p.expected_outcome = "completed";
        r.push_back(p);
    }
    {
        Preset p;
        p.name = "rescaled-n2";
        p.description = "dynamically rescaled solver, supercritical exponent";
        p.config = base_config(2, 1, -1, 6.0, 1024, 1024, 3.0, 7.0, 10000, 0.5);
        p.config.kind = "rescaled";
        p.expected_outcome = "completed";
        r.push_back(p);
    }
    {
        Preset p;
        p.name = "crosscheck-n43";
        p.description = "rescaled run to 10% mass drift, mapped back to physical "
                        "time and compared against the direct solver on y = 0";
        p.config = base_config(4, 3, -1, 12.0, 1024, 1024, 11.0, 10.0, 10000, 0.1);
        p.config.kind = "rescaled";
        p.expected_outcome = "delta_exceeded";
        p.crosscheck = true;
        p.direct_config = base_config(4, 3, -1, 12.0, 1024, 1024, 11.0, 10.0, 2000, 0.1);
        p.crosscheck_direct_steps = 2000;
        r.push_back(p);
    }
    {
        Preset p;
        p.name = "crosscheck-n2";
        p.description = "rescaled/direct comparison at the supercritical exponent";
        p.config = base_config(2, 1, -1, 6.0, 1024, 1024, 3.0, 7.0, 10000, 0.5);
        p.config.kind = "rescaled";
        p.expected_outcome = "delta_exceeded";
        p.crosscheck = true;
        p.direct_config = base_config(2, 1, -1, 6.0, 1024, 1024, 3.0, 7.0, 2000, 0.1);
        p.crosscheck_direct_steps = 2000;
        r.push_back(p);
    }
    return r;
}

}  // namespace

const std::vector<Preset>& preset_registry() {
    static const std::vector<Preset> registry = build_registry();
    return registry;
}

const Preset* find_preset(const std::string& name) {
    for (const auto& p : preset_registry())
        if (p.name == name) return &p;
    return nullptr;
}

}  // namespace gkp
