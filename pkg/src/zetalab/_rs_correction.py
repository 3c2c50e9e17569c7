"""Chebyshev models (domain [0, 1]) of the Riemann-Siegel correction terms C1..C4.

Generated by scripts/fit_rs_correction.py; do not edit by hand.
"""

import numpy as np

C1_CHEB = np.array([
    3.9137222463238117e-13,
    0.01069791388066951,
    1.4204210724289015e-12,
    0.017170651250483386,
    -3.963504871529189e-13,
    0.002793211149873118,
    1.1635570978940637e-13,
    -3.637565467096669e-05,
    3.5752650839881994e-15,
    -2.710895493429036e-05,
    -1.0645997972069667e-14,
    -1.0483750077876482e-06,
    -9.746543849775694e-15,
    5.8864666610709846e-08,
    -3.4182726094123007e-15,
    4.3229733015948835e-09,
    -1.0250914700415952e-14,
    -1.1367562815535475e-11,
    -1.0133820865787514e-14,
    -6.711484449792305e-12,
    -4.035183645556551e-15,
    -1.0233914410351377e-13,
    -8.448103328007054e-16,
    2.291569711765362e-15,
    -1.214599167770335e-14,
    -1.1327744298128542e-15,
    3.5062556157094963e-15,
    1.620448566996834e-15,
    3.227453027054847e-15,
    -4.049928795102352e-15,
    6.990501927317534e-15,
    -4.103163121771389e-15,
    2.2716203917916285e-15,
    -2.0166160408230373e-16,
    4.180683577104102e-15,
    7.202138191386703e-15,
    2.3587902464594603e-15,
    2.1525749932527177e-15,
    -9.063930161978805e-17,
    -1.0740594611619013e-14,
    1.168840415080584e-14,
    4.284766985662706e-15,
    -1.2888995426507653e-15,
    4.936589331760991e-15,
    1.4259426972529344e-15,
    4.02455846426619e-16,
    1.0482066603589846e-14,
    4.3386518336352455e-15,
    4.34114549863196e-15,
    1.2595718738850357e-14,
    5.633514488234684e-16,
    2.628756587408358e-15,
    -2.321060010856971e-15,
    -1.3026689102413346e-15,
    2.5339973175331225e-15,
    8.223673478302547e-17,
    9.632052100361215e-16,
])

C2_CHEB = np.array([
    0.0031461158219382463,
    5.501516698759178e-09,
    -0.002308784052997426,
    -9.707449156310095e-10,
    5.769825603350551e-05,
    -1.1469756120894259e-11,
    0.00035238860548249983,
    1.303806721467864e-10,
    2.5246667698719484e-05,
    -4.085849605699188e-11,
    -3.4428201217020077e-06,
    2.4974831230872856e-12,
    -3.535066218291796e-07,
    8.182218737187028e-13,
    3.7311954802958885e-09,
    -4.3383527293609107e-13,
    1.2786191044746743e-09,
    -2.3165500008699723e-13,
    2.2763530101686808e-11,
    1.046189881687837e-12,
    -1.5788145530520885e-12,
    1.1636886929327492e-13,
    1.3778583309032037e-15,
    2.2849509285528813e-13,
    8.603072274753271e-13,
    5.718767337936286e-14,
    -1.8447387240276727e-13,
    -1.8023809441464188e-13,
    -1.6815853044879396e-13,
    2.757037762153579e-13,
    -6.643086146278228e-13,
    3.143137334606081e-13,
    -2.885826072464986e-13,
    6.648604193235094e-14,
    -3.703711057463641e-13,
    -7.288314645813998e-13,
    -3.256528076714389e-13,
    -2.8469018083980604e-13,
    -1.3613635501015502e-14,
    8.997396401598339e-13,
    -1.0922447842010007e-12,
    -4.810321723737977e-13,
    6.232723213407665e-14,
    -5.38111154485369e-13,
    -1.263120467595579e-13,
    -4.147151914414557e-14,
    -8.208398424944937e-13,
    -3.4626227124294493e-13,
    -5.616426919895223e-13,
    -1.0166261821091546e-12,
    -2.0417505068647076e-13,
    -1.6334362248210413e-13,
    2.0196911092347533e-13,
    1.3095806990909297e-13,
    -1.2671629153956928e-13,
    -8.245861675762463e-14,
    -4.8779665202947044e-14,
])

C3_CHEB = np.array([
    5.550149525961584e-10,
    7.089998403169035e-05,
    8.186429424148348e-09,
    0.0002324018182896262,
    -2.4364460124086486e-09,
    -0.0001292984318576956,
    7.757397344523551e-10,
    1.8066587343428477e-05,
    -5.2219253406641424e-11,
    6.5286717336367305e-06,
    -4.0623784680816255e-11,
    -1.1709549007067015e-07,
    -2.7692776843641242e-11,
    -7.355264655478626e-08,
    -1.471290389596769e-11,
    -1.76176030512066e-09,
    -3.20372213052098e-11,
    2.649633860266706e-10,
    -3.053021373309196e-11,
    -2.510605012933146e-11,
    -1.0510638511020052e-11,
    -3.3596770385255917e-12,
    -2.5887252377268443e-12,
    -7.948257691595194e-12,
    -2.40821970824451e-11,
    -1.6145436428235082e-12,
    3.0316365771129806e-12,
    5.466008942261185e-12,
    2.4904433920285876e-12,
    -7.409033893265032e-12,
    2.3992739462937505e-11,
    -9.369356289584971e-12,
    1.1218613620137026e-11,
    -3.954811392920756e-12,
    1.3473338599789539e-11,
    2.5782709395737678e-11,
    1.5219134177050654e-11,
    1.0425400126523584e-11,
    2.265873639162739e-12,
    -2.914066678119748e-11,
    3.854225013417366e-11,
    1.926579817852549e-11,
    -7.099905990274972e-13,
    1.9968278393907703e-11,
    4.673118645927241e-12,
    1.9015328049133683e-12,
    2.6070509724011667e-11,
    1.1591531345262397e-11,
    2.3599120352107636e-11,
    3.35269512009135e-11,
    1.0424181196137562e-11,
    3.68792073702357e-12,
    -7.667560210616453e-12,
    -6.046244156520747e-12,
    2.016106777510096e-12,
    4.685539831833245e-12,
    1.6863860297349613e-12,
])

C4_CHEB = np.array([
    0.00016767383600601105,
    9.005849002936128e-06,
    -0.0002274331887688402,
    -1.5930930347756469e-06,
    6.481927446500033e-05,
    -1.8563241762138312e-08,
    -8.507467529768948e-06,
    2.1473220931165909e-07,
    -2.614302396904757e-06,
    -6.76537911129188e-08,
    8.341451703472188e-07,
    3.1649843155192013e-09,
    6.35316528646457e-08,
    1.742551625753429e-09,
    -9.864234876740269e-09,
    -1.5786750164357779e-10,
    -4.042570710437379e-10,
    -1.2225904809343813e-10,
    3.9494410876358986e-10,
    4.3086056785571273e-10,
    1.147909731746594e-10,
    3.205432908883757e-11,
    3.779309425632449e-11,
    1.0243108318989659e-10,
    2.355674428342978e-10,
    2.3593357592250095e-11,
    -1.1178152358883136e-11,
    -3.974288089177524e-11,
    -1.344135884206683e-12,
    7.468327120467053e-11,
    -2.796036401235924e-10,
    9.66945413746289e-11,
    -1.261726719367043e-10,
    5.773731162226831e-11,
    -1.7027814390368145e-10,
    -2.910654918821006e-10,
    -2.1544426267690898e-10,
    -1.1492973158029694e-10,
    -5.251959900903054e-11,
    3.1068447785112266e-10,
    -4.438995394406923e-10,
    -2.4222998667246256e-10,
    2.1065621874299973e-12,
    -2.2696605540633226e-10,
    -5.8156428095159506e-11,
    -3.138918223600556e-11,
    -2.9445514591468486e-10,
    -1.394365091562879e-10,
    -3.079778028197873e-10,
    -3.91527935716767e-10,
    -1.387851855906228e-10,
    -3.387573422696091e-11,
    1.0471783107174217e-10,
    9.138897857197783e-11,
    -1.4983145820780037e-11,
    -5.961981273526915e-11,
    -2.5924478262349065e-11,
])
