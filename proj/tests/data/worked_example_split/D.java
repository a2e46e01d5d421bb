public class D implements C{//CI: C
    public int var1_D = 1;
    public static int var2_D_static = 2;

    public void method_D() {}

    public static void method_D_static() {}

    public void method_C(B b) {}//CM: B
}
