// Reference values computed with 30-digit arithmetic, printed to 17 digits.
const AIRY_REF: &[(Complex64, Complex64, Complex64, Complex64, Complex64)] = &[
    (Complex64::new(0.14999999999999999, 0.25980762113533158), Complex64::new(0.31469624981198716, -0.067092053515856563), Complex64::new(-0.26446640924436708, 0.013810958594100717), Complex64::new(0.67925400065746264, 0.11620684547359369), Complex64::new(0.43044734051834577, 0.023921281986212473)),
    (Complex64::new(0.14999999999999999, -0.25980762113533158), Complex64::new(0.31469624981198716, 0.067092053515856563), Complex64::new(-0.26446640924436708, -0.013810958594100717), Complex64::new(0.67925400065746264, -0.11620684547359369), Complex64::new(0.43044734051834577, -0.023921281986212473)),
    (Complex64::new(0.50000000000000000, 0.86602540378443865), Complex64::new(0.17892241143889753, -0.20590531772796878), Complex64::new(-0.25904631231159057, 0.14369425198576231), Complex64::new(0.72171334268085095, 0.35663847185345459), Complex64::new(0.16129287046550542, 0.24888574519494536)),
    (Complex64::new(0.50000000000000000, -0.86602540378443865), Complex64::new(0.17892241143889753, 0.20590531772796878), Complex64::new(-0.25904631231159057, -0.14369425198576231), Complex64::new(0.72171334268085095, -0.35663847185345459), Complex64::new(0.16129287046550542, -0.24888574519494536)),
    (Complex64::new(1.5000000000000000, 2.5980762113533159), Complex64::new(-0.18056550029322014, 0.11445899422702374), Complex64::new(0.37119418326779936, -0.032684037791396810), Complex64::new(-0.54166660905599777, -0.19824879338443794), Complex64::new(-0.57755910931106811, -0.056610414051200550)),
    (Complex64::new(1.5000000000000000, -2.5980762113533159), Complex64::new(-0.18056550029322014, -0.11445899422702374), Complex64::new(0.37119418326779936, 0.032684037791396810), Complex64::new(-0.54166660905599777, 0.19824879338443794), Complex64::new(-0.57755910931106811, 0.056610414051200550)),
    (Complex64::new(2.5000000000000000, 4.3301270189221932), Complex64::new(0.027774659293797529, -0.18647625596137301), Complex64::new(-0.25526398037365451, 0.33628158965246490), Complex64::new(0.42105963298251845, 0.32298634973031679), Complex64::new(-0.23043299595549547, 0.58245679892809765)),
    (Complex64::new(2.5000000000000000, -4.3301270189221932), Complex64::new(0.027774659293797529, 0.18647625596137301), Complex64::new(-0.25526398037365451, -0.33628158965246490), Complex64::new(0.42105963298251845, -0.32298634973031679), Complex64::new(-0.23043299595549547, -0.58245679892809765)),
    (Complex64::new(3.2500000000000000, 5.6291651245988512), Complex64::new(0.053516720611963778, 0.16831897848209411), Complex64::new(0.089844360573411568, -0.44155566900493511), Complex64::new(-0.24394427780979838, -0.29153702260907958), Complex64::new(0.72749634072318332, -0.76479685308661374)),
    (Complex64::new(3.2500000000000000, -5.6291651245988512), Complex64::new(0.053516720611963778, -0.16831897848209411), Complex64::new(0.089844360573411568, 0.44155566900493511), Complex64::new(-0.24394427780979838, 0.29153702260907958), Complex64::new(0.72749634072318332, 0.76479685308661374)),
    (Complex64::new(3.7500000000000000, 6.4951905283832899), Complex64::new(0.031745811557975399, -0.16744884362241149), Complex64::new(-0.30039716098464590, 0.35749913627090695), Complex64::new(0.38988304579074368, 0.29002990482267248), Complex64::new(-0.19469512726695993, 0.61920666768320050)),
    (Complex64::new(3.7500000000000000, -6.4951905283832899), Complex64::new(0.031745811557975399, 0.16744884362241149), Complex64::new(-0.30039716098464590, -0.35749913627090695), Complex64::new(0.38988304579074368, -0.29002990482267248), Complex64::new(-0.19469512726695993, -0.61920666768320050)),
    (Complex64::new(5.0000000000000000, 8.6602540378443865), Complex64::new(-0.12620005364345106, -0.096094924815463587), Complex64::new(0.19735843314583894, 0.46124894691068786), Complex64::new(-0.026395055197447873, 0.16644129212989425), Complex64::new(-1.2643327273321543, 0.79890661098695111)),
    (Complex64::new(5.0000000000000000, -8.6602540378443865), Complex64::new(-0.12620005364345106, 0.096094924815463587), Complex64::new(0.19735843314583894, -0.46124894691068786), Complex64::new(-0.026395055197447873, -0.16644129212989425), Complex64::new(-1.2643327273321543, -0.79890661098695111)),
    (Complex64::new(12.500000000000000, 21.650635094610966), Complex64::new(-0.042320367114469502, -0.11884578965314977), Complex64::new(-0.11262228525873068, 0.62065219562196893), Complex64::new(0.16439055326907127, 0.20584694594489897), Complex64::new(-1.0462368711113009, 1.0750011366464281)),
    (Complex64::new(12.500000000000000, -21.650635094610966), Complex64::new(-0.042320367114469502, 0.11884578965314977), Complex64::new(-0.11262228525873068, -0.62065219562196893), Complex64::new(0.16439055326907127, -0.20584694594489897), Complex64::new(-1.0462368711113009, -1.0750011366464281)),
    (Complex64::new(2.0000000000000000, 3.0000000000000000), Complex64::new(0.0081044578095305350, 0.13117838260456603), Complex64::new(0.096658179033112905, -0.23198718538548632), Complex64::new(-0.39636825504039209, -0.56973091295594972), Complex64::new(0.34945767192946648, -1.1053285889338564)),
    (Complex64::new(-4.0000000000000000, 1.0000000000000000), Complex64::new(-0.36000873063686858, -1.4083845071088262), Complex64::new(-2.8609722702644133, 0.95994984130899626), Complex64::new(1.4580011545176787, -0.34127410004099188), Complex64::new(-0.98295252705827444, -2.7544015435341395)),
    (Complex64::new(-6.0000000000000000, -2.0000000000000000), Complex64::new(-18.015579029207557, -16.558336557727268), Complex64::new(47.484646192296877, -38.481818735390396), Complex64::new(-16.560367720808738, 18.013979417973106), Complex64::new(-38.486703180679764, -47.480279282254097)),
    (Complex64::new(-9.0000000000000000, 0.50000000000000000), Complex64::new(-0.058385787509342347, -0.69177428319705952), Complex64::new(-2.2896839661091829, 0.19727535864019886), Complex64::new(0.76400046487144146, -0.050943855174849238), Complex64::new(-0.21161802643621795, -2.0719406329080520)),
    (Complex64::new(0.10000000000000001, -0.20000000000000001), Complex64::new(0.32851055578764820, 0.051830387071835355), Complex64::new(-0.26319138988274667, -0.0072684530268186397), Complex64::new(0.65860234976864641, -0.089363213262083576), Complex64::new(0.43742986406232686, -0.011992159891163405)),
    (Complex64::new(-1.0000000000000000, 7.0000000000000000), Complex64::new(3896.2017539985845, -5258.8620994897527), Complex64::new(-17145.462654929796, 1452.9516224716613), Complex64::new(5258.8621086089176, 3896.2017547041210), Complex64::new(-1452.9516079753991, -17145.462635067683)),
    (Complex64::new(6.0000000000000000, -6.0000000000000000), Complex64::new(-0.00028849480809812295, 8.6593745755007132e-5), Complex64::new(0.00068769715891134355, -0.00055065076005630548), Complex64::new(-140.50728708353868, -114.66733803783164), Complex64::new(-505.54721066089213, -146.59282343200728)),
    (Complex64::new(-5.0000000000000000, 5.0000000000000000), Complex64::new(-9034.9065967176314, -16279.459048837544), Complex64::new(-30622.676872538846, 38106.254105992941), Complex64::new(16279.459050838818, -9034.9065942006399), Complex64::new(-38106.254110153769, -30622.676864951388)),
    (Complex64::new(12.000000000000000, 1.0000000000000000), Complex64::new(-1.4084977822830569e-13, 5.0457877537066563e-14), Complex64::new(4.9840604615389993e-13, -1.5589372135915516e-13), Complex64::new(-292666364358.16182, -91303436208.850564), Complex64::new(-995226088796.75786, -357371241607.07502)),
    (Complex64::new(-12.000000000000000, 3.0000000000000000), Complex64::new(1795.8331665609355, 4711.4046805574930), Complex64::new(15687.739254922095, -8191.7106624767485), Complex64::new(-4711.4046884903477, 1795.8331623642203), Complex64::new(8191.7106735844786, 15687.739225305572)),
    (Complex64::new(0.0, 0.0), Complex64::new(0.35502805388781724, 0.0), Complex64::new(-0.25881940379280680, 0.0), Complex64::new(0.61492662744600074, 0.0), Complex64::new(0.44828835735382636, 0.0)),
];
