class Greeting {
    String greet(String name) {
        int pad = 4;
        return "Hello, " + name + pad;
    }
}
