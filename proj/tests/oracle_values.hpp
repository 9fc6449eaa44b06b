/* Copyright 2026 The Sigforge Authors. All Rights Reserved.

Licensed under the Apache License, Version 2.0 (the "License");
you may not use this file except in compliance with the License.
You may obtain a copy of the License at

    http://www.apache.org/licenses/LICENSE-2.0

Unless required by applicable law or agreed to in writing, software
distributed under the License is distributed on an "AS IS" BASIS,
WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
See the License for the specific language governing permissions and
limitations under the License.
==============================================================================*/

// Generated by tests/oracles/filter_taps_oracle.py. Do not edit.
#pragma once

namespace sigforge::oracle {

// RRC, alpha = 0.35, sps = 2, span = 11 symbols, unit energy.
inline constexpr double kRrcAlpha035Sps2Span11[] = {
    0.0019447524839649514887,
    0.0053054332984709682648,
    -0.0082216760741362469616,
    0.0014446987312586672931,
    0.0067690351226191579602,
    -0.017999376551947203461,
    0.018113452797779200381,
    0.040391492993297453639,
    -0.095580301085852737087,
    -0.059888092502768336951,
    0.42978259973529002255,
    0.77476933253408725437,
    0.42978259973529002255,
    -0.059888092502768336951,
    -0.095580301085852737087,
    0.040391492993297453639,
    0.018113452797779200381,
    -0.017999376551947203461,
    0.0067690351226191579602,
    0.0014446987312586672931,
    -0.0082216760741362469616,
    0.0053054332984709682648,
    0.0019447524839649514887,
};

// RRC, alpha = 0.25, sps = 2, span = 11: t = +-1 hits the 1/(4 alpha) singularity.
inline constexpr double kRrcAlpha025Sps2Span11[] = {
    0.0065744308840494668537,
    -0.0053056305616608292439,
    -0.0020741468960556331885,
    0.015006589394483852908,
    -0.012938661628905066021,
    -0.026528152808304146219,
    0.046175400141126942334,
    0.037516473486209632271,
    -0.12042918443177782986,
    -0.045426516538901183803,
    0.43971576902309033282,
    0.75547548963518377342,
    0.43971576902309033282,
    -0.045426516538901183803,
    -0.12042918443177782986,
    0.037516473486209632271,
    0.046175400141126942334,
    -0.026528152808304146219,
    -0.012938661628905066021,
    0.015006589394483852908,
    -0.0020741468960556331885,
    -0.0053056305616608292439,
    0.0065744308840494668537,
};

// RRC, alpha = 0.35, sps = 8, span = 6, unit energy.
inline constexpr double kRrcAlpha035Sps8Span6[] = {
    -0.0090016936282722982605,
    -0.0086224575056430476567,
    -0.0052252371208801217618,
    0.001007491519604114637,
    0.009058744460687492187,
    0.017165270459770898438,
    0.023109049664270938808,
    0.02467577028070195583,
    0.020200246606587986422,
    0.009088124867093887097,
    -0.0078059889025383368665,
    -0.028047506335077438863,
    -0.047800799366008626124,
    -0.062322674045015249688,
    -0.066710096456426056738,
    -0.056783790319779965084,
    -0.029950718522705254019,
    0.01412123903029254676,
    0.073160016971608007036,
    0.14236801418102007389,
    0.21493918294414110783,
    0.28295002674365487809,
    0.33848767045260908158,
    0.37482918477461708613,
    0.3874709851157811257,
    0.37482918477461708613,
    0.33848767045260908158,
    0.28295002674365487809,
    0.21493918294414110783,
    0.14236801418102007389,
    0.073160016971608007036,
    0.01412123903029254676,
    -0.029950718522705254019,
    -0.056783790319779965084,
    -0.066710096456426056738,
    -0.062322674045015249688,
    -0.047800799366008626124,
    -0.028047506335077438863,
    -0.0078059889025383368665,
    0.009088124867093887097,
    0.020200246606587986422,
    0.02467577028070195583,
    0.023109049664270938808,
    0.017165270459770898438,
    0.009058744460687492187,
    0.001007491519604114637,
    -0.0052252371208801217618,
    -0.0086224575056430476567,
    -0.0090016936282722982605,
};

// Gaussian, BT = 0.35, sps = 2, span = 4 symbols, unit sum.
inline constexpr double kGaussianBt035Sps2Span4[] = {
    0.00000045870827944738566735,
    0.00020552285521750084985,
    0.016093950356955901825,
    0.22026433231020774531,
    0.52687147153867880927,
    0.22026433231020774531,
    0.016093950356955901825,
    0.00020552285521750084985,
    0.00000045870827944738566735,
};

// Gaussian, BT = 0.35, sps = 8, span = 4 symbols, unit sum.
inline constexpr double kGaussianBt035Sps8Span4[] = {
    0.00000011467986573314862837,
    0.00000062134907653045007857,
    0.0000030188329062800997327,
    0.000013152170494009316144,
    0.000051381966486043708693,
    0.00018000267106831830564,
    0.00056546029379162639617,
    0.0015928695713396298646,
    0.0040235856834220506742,
    0.0091138364135930790734,
    0.018511607807832147192,
    0.03371646143575088819,
    0.055067425609948231411,
    0.080649651559168640972,
    0.10591687376593249227,
    0.12473339658071609907,
    0.13172107921721639971,
    0.12473339658071609907,
    0.10591687376593249227,
    0.080649651559168640972,
    0.055067425609948231411,
    0.03371646143575088819,
    0.018511607807832147192,
    0.0091138364135930790734,
    0.0040235856834220506742,
    0.0015928695713396298646,
    0.00056546029379162639617,
    0.00018000267106831830564,
    0.000051381966486043708693,
    0.000013152170494009316144,
    0.0000030188329062800997327,
    0.00000062134907653045007857,
    0.00000011467986573314862837,
};

}  // namespace sigforge::oracle
