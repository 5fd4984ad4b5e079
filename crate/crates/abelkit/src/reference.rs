//! Frozen reference values for the regression harness: exact series
//! coefficients and 100-digit evaluation constants, in the internal
//! `G(θ(x)) = G(x) + 1` normalization (for `lambert-w` that is the negated
//! published presentation, matching `presentation_sign = −1`).

use crate::rational::Rational;

/// Exact-fraction regression data for one catalog entry.
pub struct SeriesTable {
    pub fn_name: &'static str,
    /// Julia series coefficients (exponent, numerator, denominator).
    pub lambda: &'static [(i64, i128, i128)],
    /// Abel derivative 1/λ coefficients, possibly empty.
    pub gprime: &'static [(i64, i128, i128)],
    /// Abel form pole and log coefficients.
    pub g_pole: (i128, i128),
    pub g_log: (i128, i128),
    /// Abel form Taylor coefficients.
    pub g_taylor: &'static [(i64, i128, i128)],
}

pub fn to_rational(num: i128, den: i128) -> Rational {
    Rational::new(num.into(), den.into())
}

pub const LAMBDA_XEXP_NEG: &[(i64, i128, i128)] = &[
    (2, -1, 1),
    (3, -1, 2),
    (4, -5, 12),
    (5, -5, 12),
    (6, -107, 240),
    (7, -173, 360),
    (8, -7577, 15120),
    (9, -14867, 30240),
    (10, -36461, 80640),
    (11, -41891, 100800),
    (12, -493013, 1108800),
];

pub const GPRIME_XEXP_NEG: &[(i64, i128, i128)] = &[
    (-2, -1, 1),
    (-1, 1, 2),
    (0, 1, 6),
    (1, 1, 8),
    (2, 19, 180),
    (3, 1, 12),
    (4, 41, 840),
    (5, 37, 17280),
    (6, -18349, 453600),
    (7, -443, 10080),
    (8, 55721, 2395008),
    (9, 84317, 691200),
    (10, 2594833561, 36324288000),
    (11, -152043613, 479001600),
    (12, -830066563, 1334361600),
];

pub const G_TAYLOR_XEXP_NEG: &[(i64, i128, i128)] = &[
    (1, 1, 6),
    (2, 1, 16),
    (3, 19, 540),
    (4, 1, 48),
    (5, 41, 4200),
    (6, 37, 103680),
    (7, -18349, 3175200),
    (8, -443, 80640),
    (9, 55721, 21555072),
    (10, 84317, 6912000),
    (11, 2594833561, 399567168000),
    (12, -152043613, 5748019200),
];

pub const LAMBDA_LAMBERT_W: &[(i64, i128, i128)] = &[
    (2, -1, 1),
    (3, 1, 2),
    (4, -5, 12),
    (5, 5, 12),
    (6, -107, 240),
    (7, 173, 360),
    (8, -7577, 15120),
    (9, 14867, 30240),
    (10, -36461, 80640),
    (11, 41891, 100800),
    (12, -493013, 1108800),
];

pub const GPRIME_LAMBERT_W: &[(i64, i128, i128)] = &[
    (-2, -1, 1),
    (-1, -1, 2),
    (0, 1, 6),
    (1, -1, 8),
    (2, 19, 180),
    (3, -1, 12),
    (4, 41, 840),
    (5, -37, 17280),
    (6, -18349, 453600),
    (7, 443, 10080),
    (8, 55721, 2395008),
    (9, -84317, 691200),
    (10, 2594833561, 36324288000),
    (11, 152043613, 479001600),
    (12, -830066563, 1334361600),
];

pub const G_TAYLOR_LAMBERT_W: &[(i64, i128, i128)] = &[
    (1, 1, 6),
    (2, -1, 16),
    (3, 19, 540),
    (4, -1, 48),
    (5, 41, 4200),
    (6, -37, 103680),
    (7, -18349, 3175200),
    (8, 443, 80640),
    (9, 55721, 21555072),
    (10, -84317, 6912000),
    (11, 2594833561, 399567168000),
    (12, 152043613, 5748019200),
];

pub const LAMBDA_X_OVER_1PX2: &[(i64, i128, i128)] = &[
    (3, -1, 1),
    (5, -1, 2),
    (7, -1, 2),
    (9, -7, 12),
    (11, -2, 3),
    (13, -13, 20),
    (15, -9, 20),
    (17, -71, 280),
    (19, -121, 140),
    (21, -19, 7),
    (23, -11, 20),
    (25, 171569, 9240),
];

pub const G_TAYLOR_X_OVER_1PX2: &[(i64, i128, i128)] = &[
    (2, 1, 8),
    (4, 5, 96),
    (6, 7, 288),
    (8, -1, 1280),
    (10, -671, 28800),
    (12, -9607, 483840),
    (14, 10187, 225792),
    (16, 954907, 7741440),
    (18, -10382759, 87091200),
    (20, -299685973, 304128000),
    (22, 684110137, 14050713600),
    (24, 171403792979, 15941173248),
];

pub const LAMBDA_ARCSINH: &[(i64, i128, i128)] = &[
    (3, -1, 6),
    (5, 1, 30),
    (7, -41, 3780),
    (9, 4, 945),
    (11, -3337, 1871100),
    (13, 28069, 36486450),
    (15, -228859, 696559500),
];

pub const G_TAYLOR_ARCSINH: &[(i64, i128, i128)] = &[
    (2, 79, 1050),
    (4, -29, 2625),
    (6, 91543, 36382500),
    (8, -18222899, 28378350000),
    (10, 88627739, 573024375000),
    (12, -3899439883, 142468185234375),
    (14, -32544553328689, 116721334798818750000),
];

pub const G_TAYLOR_LOGISTIC: &[(i64, i128, i128)] = &[
    (1, 1, 2),
    (2, 1, 3),
    (3, 13, 36),
    (4, 113, 240),
    (5, 1187, 1800),
    (6, 877, 945),
    (7, 14569, 11760),
    (8, 176017, 120960),
    (9, 1745717, 1360800),
    (10, 88217, 259875),
    (11, -147635381, 109771200),
    (12, -3238110769, 1556755200),
];

pub const G_TAYLOR_SIN: &[(i64, i128, i128)] = &[
    (2, 79, 1050),
    (4, 29, 2625),
    (6, 91543, 36382500),
    (8, 18222899, 28378350000),
    (10, 88627739, 573024375000),
    (12, 3899439883, 142468185234375),
    (14, -32544553328689, 116721334798818750000),
];

/// All exact regression tables.
pub fn series_tables() -> Vec<SeriesTable> {
    vec![
        SeriesTable {
            fn_name: "xexp-neg",
            lambda: LAMBDA_XEXP_NEG,
            gprime: GPRIME_XEXP_NEG,
            g_pole: (1, 1),
            g_log: (1, 2),
            g_taylor: G_TAYLOR_XEXP_NEG,
        },
        SeriesTable {
            fn_name: "lambert-w",
            lambda: LAMBDA_LAMBERT_W,
            gprime: GPRIME_LAMBERT_W,
            g_pole: (1, 1),
            g_log: (-1, 2),
            g_taylor: G_TAYLOR_LAMBERT_W,
        },
        SeriesTable {
            fn_name: "x-over-1px2",
            lambda: LAMBDA_X_OVER_1PX2,
            gprime: &[],
            g_pole: (1, 2),
            g_log: (1, 2),
            g_taylor: G_TAYLOR_X_OVER_1PX2,
        },
        SeriesTable {
            fn_name: "arcsinh",
            lambda: LAMBDA_ARCSINH,
            gprime: &[],
            g_pole: (3, 1),
            g_log: (-6, 5),
            g_taylor: G_TAYLOR_ARCSINH,
        },
        SeriesTable {
            fn_name: "logistic",
            lambda: &[],
            gprime: &[],
            g_pole: (1, 1),
            g_log: (1, 1),
            g_taylor: G_TAYLOR_LOGISTIC,
        },
        SeriesTable {
            fn_name: "sin",
            lambda: &[],
            gprime: &[],
            g_pole: (3, 1),
            g_log: (6, 5),
            g_taylor: G_TAYLOR_SIN,
        },
    ]
}

/// Argument of a reference evaluation.
#[derive(Clone, Copy, Debug)]
pub enum RefArg {
    Rat(i64, i64),
    HalfPi,
}

/// One 100-digit Abel-value reference.
pub struct AbelConstant {
    pub label: &'static str,
    pub fn_name: &'static str,
    pub arg: RefArg,
    pub value: &'static str,
}

pub const ABEL_CONSTANTS: &[AbelConstant] = &[
    AbelConstant {
        label: "abel logistic(1/2)",
        fn_name: "logistic",
        arg: RefArg::Rat(1, 2),
        value: "1.7679937861361540504436344067811323310776814331319565155769860596260007646063875144448165163256825025",
    },
    AbelConstant {
        label: "abel sin(pi/2)",
        fn_name: "sin",
        arg: RefArg::HalfPi,
        value: "2.0896227197295430595378472764175097853990195204433762593345954823058366250507039441172654894541567102",
    },
    AbelConstant {
        label: "abel xexp-neg(1/2)",
        fn_name: "xexp-neg",
        arg: RefArg::Rat(1, 2),
        value: "1.7583425585897237206264380621011597759702711962509080917543312980057047235243525304830956768215851070",
    },
    AbelConstant {
        label: "abel xexp-neg(1)",
        fn_name: "xexp-neg",
        arg: RefArg::Rat(1, 1),
        value: "1.2902472086877642916676156841611846372757644146733727282792783387848274298261878073817117283133623657",
    },
    AbelConstant {
        label: "abel xexp-neg(3/2)",
        fn_name: "xexp-neg",
        arg: RefArg::Rat(3, 2),
        value: "1.5049279842833515000953933222336771313506075685178370693140248668083561715772083535204539601724490351",
    },
    AbelConstant {
        label: "abel lambert-w(1)",
        fn_name: "lambert-w",
        arg: RefArg::Rat(1, 1),
        value: "1.1259817765744955783852558789761564280072515098030563945245583299478474227705427041049529141887963750",
    },
    AbelConstant {
        label: "abel lambert-w(4)",
        fn_name: "lambert-w",
        arg: RefArg::Rat(4, 1),
        value: "-0.1149937237341008416918237871473955482828261003724821296567880346223422503807018752834650657738379829",
    },
    AbelConstant {
        label: "abel x-over-1px2(1)",
        fn_name: "x-over-1px2",
        arg: RefArg::Rat(1, 1),
        value: "0.6882843924287254031774733442236691598221350976461793168899434154492265236034277589425850733342338149",
    },
    AbelConstant {
        label: "abel x-over-1px2(3)",
        fn_name: "x-over-1px2",
        arg: RefArg::Rat(3, 1),
        value: "3.9652585503680934112415268662209871314066299495841278202764290285396844369745309712979065528562981062",
    },
    AbelConstant {
        label: "abel arcsinh(1)",
        fn_name: "arcsinh",
        arg: RefArg::Rat(1, 1),
        value: "3.0661932701728607872763960723695476512298471326089692066001665791268362518791257272894037050181877216",
    },
    AbelConstant {
        label: "abel arcsinh(2)",
        fn_name: "arcsinh",
        arg: RefArg::Rat(2, 1),
        value: "0.1225723550627613593674498535209677050945632114479642399460441294453007178151264750096558761008003016",
    },
    AbelConstant {
        label: "abel tanh(1)",
        fn_name: "tanh",
        arg: RefArg::Rat(1, 1),
        value: "1.5107917958692238844150418798379277168488043699130575867903266412969163121334944455560618488719683881",
    },
    AbelConstant {
        label: "abel arctan(1)",
        fn_name: "arctan",
        arg: RefArg::Rat(1, 1),
        value: "1.5110547706341955247468183837921765365660348300682045097278522747037923954184486447084322156741355942",
    },
    AbelConstant {
        label: "abel x-over-sqrt1px(1)",
        fn_name: "x-over-sqrt1px",
        arg: RefArg::Rat(1, 1),
        value: "2.0037812946371416249179551894225669833303962507979755557419216169716071349148331180677424980811441121",
    },
];

/// Principal (limit-normalized) values; the series route must land on these
/// after subtracting the closed-form offset.
pub struct PrincipalConstant {
    pub label: &'static str,
    pub fn_name: &'static str,
    pub arg: RefArg,
    pub value: &'static str,
}

pub const PRINCIPAL_CONSTANTS: &[PrincipalConstant] = &[
    PrincipalConstant {
        label: "principal sin(pi/2)",
        fn_name: "sin",
        arg: RefArg::HalfPi,
        value: "1.4304553465286772447007001342639943626105251857497265882937788821233400491195385639930960365659174569",
    },
    PrincipalConstant {
        label: "principal x-over-1px2(1)",
        fn_name: "x-over-1px2",
        arg: RefArg::Rat(1, 1),
        value: "0.8615711875687117305317813745882133018410101312362431304201134178225749290958514378440509050833384868",
    },
    PrincipalConstant {
        label: "principal arcsinh(1)",
        fn_name: "arcsinh",
        arg: RefArg::Rat(1, 1),
        value: "3.7253606433737266021135432145230630740183414673026188776409831793093328278102911074135731579064269748",
    },
    PrincipalConstant {
        label: "principal tanh(1)",
        fn_name: "tanh",
        arg: RefArg::Rat(1, 1),
        value: "1.4499720296529992271183399125182753463630058063936834571482244926753012114461573078658989846993713779",
    },
    PrincipalConstant {
        label: "principal arctan(1)",
        fn_name: "arctan",
        arg: RefArg::Rat(1, 1),
        value: "1.5718745368504201820435203511118289070518333935875786393699544233254074961057857823985950798467326044",
    },
    PrincipalConstant {
        label: "principal x-over-sqrt1px(1)",
        fn_name: "x-over-sqrt1px",
        arg: RefArg::Rat(1, 1),
        value: "2.3503548849171142796265712501516552673681463179781031828022616217183039458996804758706741615793534559",
    },
];

/// Which composite map a half-iterate reference belongs to.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum HalfTarget {
    /// b(x) = x·e^x
    XExp,
    /// d(x) = x + 1/x
    XPlusInv,
    /// arcsinh(x)
    Arcsinh,
}

pub struct HalfConstant {
    pub label: &'static str,
    pub target: HalfTarget,
    pub arg: (i64, i64),
    pub value: &'static str,
}

pub const HALF_CONSTANTS: &[HalfConstant] = &[
    HalfConstant {
        label: "half xexp(-3/2)",
        target: HalfTarget::XExp,
        arg: (-3, 2),
        value: "-0.4264166294176332515153118314959282016263288269779343063735255284490601822588280606246428889441780123",
    },
    HalfConstant {
        label: "half xexp(-1)",
        target: HalfTarget::XExp,
        arg: (-1, 1),
        value: "-0.4886648186650355287868051499783363426032437145420460274529527835852337101053917173648041964826593958",
    },
    HalfConstant {
        label: "half xexp(-1/2)",
        target: HalfTarget::XExp,
        arg: (-1, 2),
        value: "-0.3734798977577790519054197236844372051304606958133286554406703025989395393199161956685435603156864847",
    },
    HalfConstant {
        label: "half xexp(1/2)",
        target: HalfTarget::XExp,
        arg: (1, 2),
        value: "0.6260239513021067337184553317924634006735786718536452196041180904364827145223720139252799764700719890",
    },
    HalfConstant {
        label: "half xexp(1)",
        target: HalfTarget::XExp,
        arg: (1, 1),
        value: "1.5134281085001618745523784595802361360523303713302752630412064404423776816220701637052381526519832852",
    },
    HalfConstant {
        label: "half x-plus-inv(1)",
        target: HalfTarget::XPlusInv,
        arg: (1, 1),
        value: "1.6682712581427341026136524455363262029030009626079545612116471428413629522821259531646886087189899654",
    },
    HalfConstant {
        label: "half x-plus-inv(2)",
        target: HalfTarget::XPlusInv,
        arg: (2, 1),
        value: "2.2676941608146219556986675663267817404058977213864806150199155621095539006524575786194598054301929223",
    },
    HalfConstant {
        label: "half x-plus-inv(3)",
        target: HalfTarget::XPlusInv,
        arg: (3, 1),
        value: "3.1715628805584589950794328878353040425425234867124085284281807613396012483190218839371168323598229023",
    },
    HalfConstant {
        label: "half arcsinh(1)",
        target: HalfTarget::Arcsinh,
        arg: (1, 1),
        value: "0.9355612833589182616399920249225053056758840032520531674271170225577872426642048379958915233196045102",
    },
    HalfConstant {
        label: "half arcsinh(2)",
        target: HalfTarget::Arcsinh,
        arg: (2, 1),
        value: "1.6665617031958385003364670121909423594133577955133330718956939445848951705893403956452533778340335331",
    },
];

/// Count of agreeing leading significant digits between two decimal strings
/// (signs must match; the decimal points are ignored).
pub fn matching_digits(a: &str, b: &str) -> usize {
    let norm = |s: &str| -> (bool, Vec<u8>) {
        let neg = s.trim_start().starts_with('-');
        let ds: Vec<u8> = s.bytes().filter(|c| c.is_ascii_digit()).collect();
        // Skip leading zeros (they carry no significance for this count).
        let start = ds.iter().take_while(|&&c| c == b'0').count();
        (neg, ds[start..].to_vec())
    };
    let (sa, da) = norm(a);
    let (sb, db) = norm(b);
    if sa != sb {
        return 0;
    }
    da.iter().zip(db.iter()).take_while(|(x, y)| x == y).count()
}
