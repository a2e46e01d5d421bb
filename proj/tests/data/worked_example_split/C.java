public interface C {
    public void method_C(B b);//CM: B
}
