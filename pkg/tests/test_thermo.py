import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from thermoslice.constants import (Composition, GasConstants, OceanConstants,
                                   VenusConstants)
from thermoslice.thermo import (DryAir, MoistAir, OceanWater, VenusGas,
                                dry_entropy_energy, dry_eos, latent_heat,
                                moist_entropy, moist_internal_energy,
                                moist_pressure, partial_pressures,
                                potential_temperature, saturation_partition,
                                saturation_specific_humidity,
                                saturation_vapor_pressure,
                                saturated_vapor_concentration)
from thermoslice import verification as ver

CONST = GasConstants()


class TestDryEos:
    def test_hand_value(self):
        p = dry_eos(1.0, 300.0, CONST)
        assert p == pytest.approx(1.0 * CONST.R_d * 300.0, rel=1e-15)
        assert abs(p - 86115.0) < 3.0

    def test_vanishing_density_limit(self):
        assert dry_eos(1e-12, 300.0, CONST) == pytest.approx(
            1e-12 * dry_eos(1.0, 300.0, CONST), rel=1e-14)

    def test_round_trip(self):
        rho, T = 1.17, 288.0
        p = dry_eos(rho, T, CONST)
        v = CONST.R_d * T / p
        assert v == pytest.approx(1.0 / rho, rel=1e-14)

    def test_domain_errors(self):
        with pytest.raises(ValueError):
            dry_eos(-1.0, 300.0, CONST)
        with pytest.raises(ValueError):
            dry_eos(1.0, 0.0, CONST)


class TestDryEntropyEnergy:
    def test_reference_point_normalization(self):
        c = GasConstants(eta0=-(CONST.C_pd * np.log(CONST.T0)
                                - CONST.R_d * np.log(CONST.p0)))
        _, eta = dry_entropy_energy(c.T0, c.p0, c)
        assert abs(eta) < 1e-10

    def test_deta_dT_is_cp_over_T(self):
        T, p = 280.0, 9e4
        h = 1e-6 * T
        _, ep = dry_entropy_energy(T + h, p, CONST)
        _, em = dry_entropy_energy(T - h, p, CONST)
        assert (ep - em) / (2 * h) == pytest.approx(CONST.C_pd / T, rel=1e-6)

    def test_energy(self):
        u, _ = dry_entropy_energy(300.0, 1e5, CONST)
        assert u == pytest.approx(CONST.C_vd * 300.0, rel=1e-15)


class TestLatentHeat:
    def test_intercept(self):
        assert latent_heat(0.0, CONST) == CONST.L00

    def test_reference_value(self):
        assert latent_heat(CONST.T0, CONST) == pytest.approx(CONST.L_v_T0, rel=1e-14)
        assert latent_heat(CONST.T0, CONST) == pytest.approx(2.501e6, rel=1e-12)

    def test_affine(self):
        T = 271.3
        assert (latent_heat(2 * T, CONST) - latent_heat(T, CONST)
                == pytest.approx((CONST.C_pv - CONST.C_l) * T, rel=1e-14))


class TestSaturationVaporPressure:
    def test_reference_point(self):
        assert saturation_vapor_pressure(CONST.T0, CONST) == pytest.approx(
            CONST.p0_star, rel=1e-14)

    def test_monotone(self):
        T = np.arange(200.0, 321.0, 1.0)
        p = saturation_vapor_pressure(T, CONST)
        assert np.all(np.diff(p) > 0)

    def test_clausius_clapeyron(self):
        # d ln p*/dT = L(T) / (R_v T^2)
        T = np.linspace(210.0, 315.0, 30)
        h = 1e-6 * T
        dlnp = (np.log(saturation_vapor_pressure(T + h, CONST))
                - np.log(saturation_vapor_pressure(T - h, CONST))) / (2 * h)
        expected = latent_heat(T, CONST) / (CONST.R_v * T ** 2)
        assert np.max(np.abs(dlnp / expected - 1)) < 1e-6


class TestSaturationSpecificHumidity:
    def test_vanishing_vapor_pressure_limit(self):
        # p >> p*: q* ~ eps p*/p -> 0
        q = saturation_specific_humidity(1e12, 280.0, CONST)
        assert q < 1e-8

    def test_monotone_in_T(self):
        T = np.linspace(230.0, 310.0, 400)
        q = saturation_specific_humidity(8.5e4, T, CONST)
        assert np.all(np.diff(q) > 0)

    def test_special_pressure(self):
        T = 290.0
        p = saturation_vapor_pressure(T, CONST) * (2.0 - CONST.epsilon)
        assert saturation_specific_humidity(p, T, CONST) == pytest.approx(
            CONST.epsilon, rel=1e-12)

    def test_domain_error(self):
        with pytest.raises(ValueError):
            saturation_specific_humidity(1.0, 320.0, CONST)


class TestMoistPressure:
    def test_dry_reduction(self):
        comp = Composition.dry()
        rho, T = 1.1, 290.0
        assert moist_pressure(rho, T, comp, CONST) == pytest.approx(
            dry_eos(rho, T, CONST), rel=1e-15)

    def test_two_forms_agree(self):
        comp = Composition.from_water(0.012, 0.004, 0.002)
        a = moist_pressure(1.05, 287.0, comp, CONST, form="partial")
        b = moist_pressure(1.05, 287.0, comp, CONST, form="virtual")
        assert a == pytest.approx(b, rel=1e-14)

    def test_hand_value(self):
        comp = Composition.from_water(0.01)
        p = moist_pressure(1.0, 300.0, comp, CONST)
        assert p == pytest.approx(
            (0.99 * CONST.R_d + 0.01 * CONST.R_v) * 300.0, rel=1e-15)
        assert abs(p - (0.99 * 287.05 + 0.01 * 461.5) * 300.0) < 3.0


class TestMoistInternalEnergy:
    def test_intercept(self):
        comp = Composition.from_water(0.01, 0.003, 0.001)
        assert moist_internal_energy(0.0, comp, CONST) == pytest.approx(
            0.01 * CONST.L00, rel=1e-14)

    def test_two_forms_agree(self):
        rng = np.random.default_rng(3)
        for _ in range(5):
            T = rng.uniform(230, 320)
            comp = Composition.from_water(rng.uniform(0, 0.03),
                                          rng.uniform(0, 0.01),
                                          rng.uniform(0, 0.01))
            a = moist_internal_energy(T, comp, CONST, form="intercept")
            b = moist_internal_energy(T, comp, CONST, form="latent")
            assert a == pytest.approx(b, rel=1e-12)

    def test_dry_limit(self):
        assert moist_internal_energy(300.0, Composition.dry(), CONST) == \
            pytest.approx(CONST.C_vd * 300.0, rel=1e-15)


class TestMoistEntropy:
    def test_explicit_identity(self):
        rng = np.random.default_rng(5)
        T, p, comp = ver.random_moist_states(rng, 100)
        assert ver.explicit_force_error(CONST, T, p, comp) < 1e-8

    def test_gibbs_relation(self):
        rng = np.random.default_rng(6)
        T, p, comp = ver.random_moist_states(rng, 20)
        assert ver.gibbs_relation_error(MoistAir(CONST), T, p, comp) < 1e-6

    def test_dry_limit_offset_is_constant(self):
        comp = Composition.dry()
        states = [(260.0, 7e4), (300.0, 1.02e5)]
        offsets = []
        for T, p in states:
            _, eta_dry = dry_entropy_energy(T, p, CONST)
            offsets.append(moist_entropy(T, p, comp, CONST) - eta_dry)
        assert offsets[0] == pytest.approx(offsets[1], abs=1e-10)

    def test_domain_error(self):
        comp = Composition(q_d=0.99, q_v=-0.01, q_c=0.01, q_r=0.01)
        with pytest.raises(ValueError):
            moist_entropy(280.0, 9e4, comp, CONST)


class TestSolveState:
    def test_unsaturated_roundtrip(self):
        eos = MoistAir(CONST)
        T, p = 295.0, 1.0e5
        q_w = 0.008  # well below q* at this state
        comp = Composition.from_water(q_w)
        v = eos.specific_volume(T, p, comp)
        eta = eos.entropy(T, p, comp)
        T2, p2, q_v2, q_c2 = eos.solve_state(v, q_w, 0.0, eta=eta)
        assert T2 == pytest.approx(T, rel=1e-9)
        assert p2 == pytest.approx(p, rel=1e-9)
        assert q_v2 == q_w and q_c2 == 0.0

    def test_roundtrip_both_branches(self):
        rng = np.random.default_rng(7)
        assert ver.solve_state_roundtrip_error(CONST, rng, n=40) < 1e-9

    def test_energy_input_roundtrip(self):
        eos = MoistAir(CONST)
        T, p = 280.0, 9e4
        q_w, q_r = 0.02, 0.003
        q_v, q_c = saturation_partition(p, T, q_w, q_r, CONST)
        assert q_c > 0  # saturated case
        comp = Composition(q_d=1 - q_w - q_r, q_v=q_v, q_c=q_c, q_r=q_r)
        v = eos.specific_volume(T, p, comp)
        u = eos.internal_energy(T, p, comp)
        T2, p2, q_v2, _ = eos.solve_state(v, q_w, q_r, u=u)
        assert T2 == pytest.approx(T, rel=1e-9)
        assert p2 == pytest.approx(p, rel=1e-9)
        assert q_v2 == pytest.approx(q_v, rel=1e-8)

    def test_partition_continuity_at_boundary(self):
        T, p = 285.0, 9.2e4
        q_star = saturation_specific_humidity(p, T, CONST)
        q_v, q_c = saturation_partition(p, T, q_star, 0.0, CONST)
        assert q_v == pytest.approx(q_star, rel=1e-12)
        assert abs(q_c) < 1e-15

    def test_dry_reduction(self):
        eos = MoistAir(CONST)
        T, p = 270.0, 8e4
        comp = Composition.dry()
        v = eos.specific_volume(T, p, comp)
        eta = eos.entropy(T, p, comp)
        T2, p2, q_v2, q_c2 = eos.solve_state(v, 0.0, 0.0, eta=eta)
        assert T2 == pytest.approx(T, rel=1e-10)
        assert q_v2 == 0.0 and q_c2 == 0.0


class TestPotentialTemperature:
    def test_dry_exner(self):
        eos = DryAir(CONST)
        T, p = 275.0, 7.3e4
        expected = T / eos.exner(p)
        for mode in ("inversion", "integral"):
            th = potential_temperature(eos, p, T, None, mode=mode)
            assert th == pytest.approx(expected, rel=1e-8)

    def test_moist_closed_form(self):
        eos = MoistAir(CONST)
        comp = Composition.from_water(0.012, 0.004, 0.001)
        T, p = 290.0, 8.6e4
        th_inv = potential_temperature(eos, p, T, comp, mode="inversion")
        assert th_inv == pytest.approx(eos.theta_closed_form(T, p, comp), rel=1e-7)

    def test_reference_pressure_fixed_point(self):
        eos = MoistAir(CONST)
        comp = Composition.from_water(0.01)
        th = potential_temperature(eos, CONST.p0, 301.0, comp, mode="inversion")
        assert th == pytest.approx(301.0, rel=1e-12)
        th_int = potential_temperature(eos, CONST.p0, 301.0, comp, mode="integral")
        assert th_int == pytest.approx(301.0, rel=1e-12)

    def test_modes_agree_all_eos(self):
        rng = np.random.default_rng(11)
        for eos in (DryAir(CONST), MoistAir(CONST), VenusGas(), OceanWater()):
            T, p, comp = ver.random_states_for(eos, rng, 10)
            assert ver.theta_mode_agreement_error(eos, T, p, comp) < 1e-7


class TestDerivativePack:
    def test_cp_cv_sound_speed_identity(self):
        # 1/(rho C_p) = 1/(rho C_v) - rho c_s^2 Gamma^2 / T
        rng = np.random.default_rng(13)
        T, p, comp = ver.random_moist_states(rng, 20)
        eos = MoistAir(CONST)
        C_v, C_p, c_s2, Gamma, _ = eos.derivative_pack(T, p, comp)
        rho = 1.0 / eos.specific_volume(T, p, comp)
        lhs = 1.0 / (rho * C_p)
        rhs = 1.0 / (rho * C_v) - rho * c_s2 * Gamma ** 2 / T
        assert np.max(np.abs(lhs / rhs - 1)) < 1e-6

    def test_dry_ideal_gas_combination(self):
        eos = DryAir(CONST)
        T, p = 300.0, 1e5
        C_v, _, c_s2, Gamma, _ = eos.derivative_pack(T, p)
        rho = p / (CONST.R_d * T)
        assert rho * c_s2 * Gamma == pytest.approx(p / (rho * C_v), rel=1e-12)

    def test_mayer_relation_from_entropy(self):
        # C_p - C_v equals q_d R_d + q_v R_v, checked against FD of eta
        eos = MoistAir(CONST)
        comp = Composition.from_water(0.015, 0.002, 0.001)
        T, p = 285.0, 9e4
        C_v, C_p, _, _, _ = eos.derivative_pack(T, p, comp)
        assert C_p - C_v == pytest.approx(
            comp.q_d * CONST.R_d + comp.q_v * CONST.R_v, rel=1e-12)
        h = 1e-6 * T
        C_p_fd = T * (eos.entropy(T + h, p, comp) - eos.entropy(T - h, p, comp)) / (2 * h)
        assert C_p == pytest.approx(C_p_fd, rel=1e-6)
        v = eos.specific_volume(T, p, comp)

        def eta_of_T_at_v(TT):
            return eos.entropy(TT, eos.pressure_at_volume(TT, v, comp), comp)

        C_v_fd = T * (eta_of_T_at_v(T + h) - eta_of_T_at_v(T - h)) / (2 * h)
        assert C_v == pytest.approx(C_v_fd, rel=1e-6)

    def test_gamma1_definition(self):
        rng = np.random.default_rng(17)
        for eos in (DryAir(CONST), MoistAir(CONST), VenusGas(), OceanWater()):
            T, p, comp = ver.random_states_for(eos, rng, 10)
            _, _, c_s2, _, Gamma1 = eos.derivative_pack(T, p, comp)
            rho = 1.0 / eos.specific_volume(T, p, comp)
            assert np.max(np.abs(Gamma1 / (rho * c_s2 / p) - 1)) < 1e-10

    def test_partial_enthalpy_identity(self):
        # h_k = mu_k/m_k + T eta_k
        eos = MoistAir(CONST)
        T, p = 278.0, 8e4
        comp = Composition.from_water(0.01, 0.005, 0.002)
        mu = eos.chemical_potentials(T, p, comp)
        eta_k = eos.partial_entropies(T, p, comp)
        h_k = eos.partial_enthalpies(T, p, comp)
        for k in ("d", "v", "c", "r"):
            assert h_k[k] == pytest.approx(mu[k] + T * eta_k[k], rel=1e-10)

    def test_dp_dq_at_fixed_v_eta_matches_fd(self):
        eos = MoistAir(CONST)
        T, p = 284.0, 8.8e4
        comp = Composition.from_water(0.014, 0.003, 0.002)
        analytic = eos.dp_dq_at_volume_entropy(T, p, comp)
        fd = super(MoistAir, eos).dp_dq_at_volume_entropy.__get__(eos)(T, p, comp)
        for k in ("d", "v", "c", "r"):
            assert analytic[k] == pytest.approx(fd[k], rel=2e-5)

    def test_gamma1_homogeneity_combination(self):
        # Gamma1 p = sum_k dp/dq_k q_k + dp/deta eta at fixed volume
        eos = MoistAir(CONST)
        T, p = 290.0, 9.5e4
        comp = Composition.from_water(0.012, 0.004, 0.001)
        dpdq = eos.dp_dq_at_volume_entropy(T, p, comp)
        dpde = eos.dp_deta_at_volume(T, p, comp)
        eta = eos.entropy(T, p, comp)
        q = comp.as_dict()
        _, _, _, _, Gamma1 = eos.derivative_pack(T, p, comp)
        total = sum(dpdq[k] * q[k] for k in q) + dpde * eta
        assert total == pytest.approx(Gamma1 * p, rel=1e-10)


class TestVenus:
    def test_small_nu_limit(self):
        c = VenusConstants(nu=1e-6)
        eos = VenusGas(c)
        T, p = 500.0, 5e6
        eta = eos.entropy(T, p)
        eta_log = c.C_p0 * np.log(T / c.T0) - c.R * np.log(p / c.p0)
        assert eta == pytest.approx(eta_log, rel=1e-4)

    def test_theta_defining_property(self):
        eos = VenusGas()
        T, p = 600.0, 4e6
        th = potential_temperature(eos, p, T, None, mode="inversion")
        assert eos.entropy(th, eos.const.p0) == pytest.approx(
            eos.entropy(T, p), abs=1e-9 * abs(eos.entropy(T, p)) + 1e-9)

    def test_gamma_matches_fd_along_adiabat(self):
        eos = VenusGas()
        T, p = 650.0, 6e6
        _, _, _, Gamma, _ = eos.derivative_pack(T, p)
        eta = eos.entropy(T, p)
        h = 1e-4 * p

        def T_at(pp):
            from thermoslice.thermo.base import newton_bisect
            return newton_bisect(lambda TT: eos.entropy(TT, pp) - eta,
                                 eos.T_bracket, T_init=T, shape=())

        fd = (T_at(p + h) - T_at(p - h)) / (2 * h)
        assert Gamma == pytest.approx(float(fd), rel=1e-6)


class TestOcean:
    def test_reference_density(self):
        c = OceanConstants(alpha=0.0)
        eos = OceanWater(c)
        for T in (270.0, 290.0, 310.0):
            rho = 1.0 / eos.specific_volume(T, c.p_ref, 0.0)
            assert rho == pytest.approx(c.rho_ref, rel=1e-14)

    def test_gibbs_relation(self):
        rng = np.random.default_rng(19)
        eos = OceanWater()
        T, p, q = ver.random_states_for(eos, rng, 20)
        assert ver.gibbs_relation_error(eos, T, p, q) < 1e-6

    def test_diffusive_stability(self):
        eos = OceanWater()
        q = np.linspace(0.003, 0.12, 200)
        dmu = eos.chemical_potential_difference(288.0, 2e6, q)
        assert np.all(np.diff(dmu) > 0)


class TestInvariants:
    def test_gibbs_all_eos(self):
        rng = np.random.default_rng(23)
        for eos in (DryAir(CONST), MoistAir(CONST), VenusGas(), OceanWater()):
            T, p, comp = ver.random_states_for(eos, rng, 100)
            assert ver.gibbs_relation_error(eos, T, p, comp) < 1e-6

    def test_euler_homogeneity_all_eos(self):
        rng = np.random.default_rng(29)
        for eos in (DryAir(CONST), MoistAir(CONST), VenusGas(), OceanWater()):
            T, p, comp = ver.random_states_for(eos, rng, 100)
            assert ver.euler_homogeneity_error(eos, T, p, comp) < 1e-8

    @settings(max_examples=25, deadline=None)
    @given(T=st.floats(240.0, 310.0), p=st.floats(5e4, 1.05e5),
           q_w=st.floats(1e-4, 0.03), q_r=st.floats(0.0, 0.01))
    def test_partition_is_consistent(self, T, p, q_w, q_r):
        q_v, q_c = saturation_partition(p, T, q_w, q_r, CONST)
        assert q_v >= 0 and q_c >= -1e-15
        assert q_v + q_c == pytest.approx(q_w, rel=1e-12, abs=1e-15)
        q_star = saturation_specific_humidity(p, T, CONST)
        if q_c > 1e-12:
            assert q_w >= q_star
