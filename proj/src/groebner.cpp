#include "lenhil/groebner.hpp"

#include "gb_engine.hpp"

#include <variant>

namespace lenhil {

using detail::FpDom;
using detail::GBEngine;
using detail::QDom;
using detail::ZDom;

struct StrongGB::Impl {
    Presentation pres;
    std::variant<std::monostate, GBEngine<ZDom>, GBEngine<QDom>, GBEngine<FpDom>> engine;

    template <class F>
    auto visit(F&& f) const {
        using R = decltype(f(std::get<GBEngine<ZDom>>(engine)));
        return std::visit(
            [&](const auto& e) -> R {
                if constexpr (std::is_same_v<std::decay_t<decltype(e)>, std::monostate>)
                    throw GroebnerError("StrongGB: empty engine");
                else
                    return f(e);
            },
            engine);
    }
};

StrongGB StrongGB::compute(const Presentation& input, long step_budget) {
    Presentation pres = lift_to_integers(reduce_coefficients(input));
    pres.validate();
    auto impl = std::make_shared<Impl>();
    impl->pres = pres;
    try {
        switch (pres.ring.base) {
            case BaseKind::Integers: {
                GBEngine<ZDom> eng(ZDom{}, pres.gens, pres.ring.k);
                eng.compute(pres.relations, step_budget);
                impl->engine = std::move(eng);
                break;
            }
            case BaseKind::Rationals: {
                GBEngine<QDom> eng(QDom{}, pres.gens, pres.ring.k);
                eng.compute(pres.relations, step_budget);
                impl->engine = std::move(eng);
                break;
            }
            case BaseKind::PrimeField: {
                if (!pres.ring.n.fits_slong_p()) throw GroebnerError("prime too large");
                GBEngine<FpDom> eng(FpDom{pres.ring.n.get_si()}, pres.gens, pres.ring.k);
                eng.compute(pres.relations, step_budget);
                impl->engine = std::move(eng);
                break;
            }
            default:
                throw GroebnerError("unsupported base ring for Groebner computation");
        }
    } catch (const detail::BudgetExceeded& e) {
        throw GroebnerError(std::string("BudgetExceeded: ") + e.what());
    }
    StrongGB gb;
    gb.impl_ = std::move(impl);
    return gb;
}

const Presentation& StrongGB::presentation() const { return impl_->pres; }

std::vector<FreeVec> StrongGB::elements() const {
    return impl_->visit([&](const auto& eng) {
        std::vector<FreeVec> out;
        for (const auto& v : eng.basis())
            out.push_back(detail::from_tvec(eng.dom(), v, eng.gens(), eng.k()));
        return out;
    });
}

FreeVec StrongGB::normal_form(const FreeVec& f) const {
    if (f.gens() != impl_->pres.gens) throw GroebnerError("normal_form: component count mismatch");
    return impl_->visit([&](const auto& eng) {
        auto nf = eng.normal_form(detail::to_tvec(eng.dom(), f));
        return detail::from_tvec(eng.dom(), nf, eng.gens(), eng.k());
    });
}

Int StrongGB::staircase_modulus(const Term& beta) const {
    return impl_->visit([&](const auto& eng) { return eng.staircase_modulus(beta); });
}

Staircase StrongGB::staircase(int max_degree) const {
    Staircase out;
    std::vector<int> unit(impl_->pres.ring.k, 1);
    for (const auto& m : monomials_up_to(impl_->pres.ring.k, max_degree, unit))
        for (int pos = 0; pos < impl_->pres.gens; ++pos) {
            Term beta{m, pos};
            out[beta] = staircase_modulus(beta);
        }
    return out;
}

}  // namespace lenhil
